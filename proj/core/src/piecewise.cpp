#include "blowup/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace blowup {

double ExpBranch::value(double tau) const {
  return std::exp(0.5 * tau) - std::exp(0.5 * n) + 1.0 / (n + 1);
}

double ExpBranch::slope(double tau) const { return 0.5 * std::exp(0.5 * tau); }

// Each half is evaluated from its own end anchor: the two forms are the
// same quadratic (the curvature solve imposes the midpoint matching), but
// anchoring keeps the end conditions exact in floating point even when
// the curvatures are huge.
double SplineSegment::value(double tau) const {
  if (tau < mid) {
    const double d = tau - left;
    return v_left + s_left * d - 0.5 * a * d * d;
  }
  const double d = tau - right;
  return v_right + s_right * d + 0.5 * b * d * d;
}

double SplineSegment::slope(double tau) const {
  if (tau < mid) return s_left - a * (tau - left);
  return s_right + b * (tau - right);
}

double SplineSegment::min_value() const {
  const double h = mid - left;
  const double den = 2.0 * (v_left - v_right) + h * (s_left + 3.0 * s_right);
  return v_right - h * h * s_right * s_right / den;
}

double Segment::value(double tau) const {
  return std::visit([tau](const auto& s) { return s.value(tau); }, kind);
}

double Segment::slope(double tau) const {
  return std::visit([tau](const auto& s) { return s.slope(tau); }, kind);
}

PiecewiseC1Function::PiecewiseC1Function(std::vector<double> knots,
                                         std::vector<Segment> segments,
                                         double amplitude)
    : knots_(std::move(knots)),
      segments_(std::move(segments)),
      amplitude_(amplitude) {
  if (knots_.size() < 2) {
    throw std::invalid_argument("PiecewiseC1Function: need at least two knots");
  }
  if (segments_.size() + 1 != knots_.size()) {
    throw std::invalid_argument(
        "PiecewiseC1Function: segment count must be knot count - 1");
  }
  if (!(amplitude_ > 0.0) || !std::isfinite(amplitude_)) {
    throw std::invalid_argument(
        "PiecewiseC1Function: amplitude must be positive and finite");
  }
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    if (!(knots_[i] < knots_[i + 1])) {
      throw std::invalid_argument(
          "PiecewiseC1Function: knots must be strictly increasing");
    }
    if (segments_[i].left != knots_[i] || segments_[i].right != knots_[i + 1]) {
      throw std::invalid_argument(
          "PiecewiseC1Function: segment interval does not match its knot pair");
    }
  }
}

std::size_t PiecewiseC1Function::segment_index(double tau) const {
  if (!(tau >= knots_.front()) || !(tau <= knots_.back())) {
    throw std::domain_error("PiecewiseC1Function: tau = " +
                            std::to_string(tau) + " outside domain [" +
                            std::to_string(knots_.front()) + ", " +
                            std::to_string(knots_.back()) + "]");
  }
  if (tau == knots_.back()) return segments_.size() - 1;
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), tau);
  return static_cast<std::size_t>(it - knots_.begin()) - 1;
}

double PiecewiseC1Function::eval(double tau) const {
  return amplitude_ * segments_[segment_index(tau)].value(tau);
}

double PiecewiseC1Function::eval_derivative(double tau) const {
  return amplitude_ * segments_[segment_index(tau)].slope(tau);
}

std::vector<KnotGap> PiecewiseC1Function::continuity_audit(double tol) const {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("continuity_audit: tol must be positive");
  }
  std::vector<KnotGap> gaps;
  for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
    const double knot = knots_[i + 1];
    // Left limit through the closed form of the segment ending at the knot.
    const double value_gap =
        std::abs(segments_[i].value(knot) - segments_[i + 1].value(knot));
    const double slope_gap =
        std::abs(segments_[i].slope(knot) - segments_[i + 1].slope(knot));
    if (value_gap > tol || slope_gap > tol) {
      gaps.push_back({knot, value_gap, slope_gap});
    }
  }
  return gaps;
}

}  // namespace blowup
