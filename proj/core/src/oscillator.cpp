#include "blowup/oscillator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace blowup {

namespace {

// Depth cap: beyond ~46 the bridge interval shrinks under the knot
// spacing representable in double (xi_n < ulp(n+1)), and the curvature
// solve overflows long before 400.
constexpr int kMaxDepth = 40;

void validate_config(const OscillatorConfig& cfg) {
  if (!(cfg.M > 0.0) || !std::isfinite(cfg.M)) {
    throw std::invalid_argument("OscillatorConfig: M must be positive");
  }
  if (cfg.n_max < 1 || cfg.n_max > kMaxDepth) {
    throw std::invalid_argument("OscillatorConfig: n_max must be in [1, " +
                                std::to_string(kMaxDepth) + "]");
  }
  if (cfg.certify_grid_density < 1) {
    throw std::invalid_argument(
        "OscillatorConfig: certify_grid_density must be >= 1");
  }
}

double segment_min_on_grid(const Segment& s, int density) {
  const int k = std::max(2, static_cast<int>(
                                std::ceil((s.right - s.left) * density)));
  double mn = s.value(s.left);
  for (int i = 1; i <= k; ++i) {
    mn = std::min(mn, s.value(s.left + (s.right - s.left) * i / k));
  }
  return mn;
}

}  // namespace

double branch_gap(int n) { return std::ldexp(1.0, -n - 1); }

HermiteData hermite_data(int n) {
  if (n < 0) throw std::invalid_argument("hermite_data: n must be >= 0");
  const double left_end = (n + 1) - branch_gap(n);
  HermiteData hd;
  hd.v_left = std::exp(0.5 * left_end) - std::exp(0.5 * n) + 1.0 / (n + 1);
  hd.s_left = 0.5 * std::exp(0.5 * left_end);
  hd.v_right = 1.0 / (n + 2);
  hd.s_right = 0.5 * std::exp(0.5 * (n + 1));
  return hd;
}

SplineSegment solve_spline(const HermiteData& hd, double left, double right,
                           int n) {
  const double h = 0.5 * (right - left);
  SplineSegment s;
  s.n = n;
  s.left = left;
  s.right = right;
  s.mid = left + h;
  s.v_left = hd.v_left;
  s.s_left = hd.s_left;
  s.v_right = hd.v_right;
  s.s_right = hd.s_right;
  s.a = (hd.v_left - hd.v_right + (3.0 * hd.s_left + hd.s_right) * h / 2.0) /
        (h * h);
  s.b = s.a + (hd.s_right - hd.s_left) / h;
  if (!(s.a > 0.0) || !(s.b >= 0.0) || !std::isfinite(s.a) ||
      !std::isfinite(s.b)) {
    throw std::runtime_error(
        "solve_spline: curvature ansatz failed at n = " + std::to_string(n) +
        " (a = " + std::to_string(s.a) + ", b = " + std::to_string(s.b) + ")");
  }
  if (!(s.min_value() > 0.0)) {
    throw std::runtime_error(
        "solve_spline: bridge piece not strictly positive at n = " +
        std::to_string(n));
  }
  return s;
}

SplineSegment solve_spline(int n) {
  if (n < 0) throw std::invalid_argument("solve_spline: n must be >= 0");
  const double right = static_cast<double>(n + 1);
  return solve_spline(hermite_data(n), right - branch_gap(n), right, n);
}

PiecewiseC1Function build_oscillator(const OscillatorConfig& cfg) {
  validate_config(cfg);
  std::vector<double> knots;
  std::vector<Segment> segments;
  knots.reserve(2 * cfg.n_max + 2);
  segments.reserve(2 * cfg.n_max + 1);
  knots.push_back(0.0);
  for (int n = 0; n <= cfg.n_max; ++n) {
    const double branch_end = (n + 1) - branch_gap(n);
    segments.push_back(
        {ExpBranch{n}, static_cast<double>(n), branch_end});
    knots.push_back(branch_end);
    if (n < cfg.n_max) {
      segments.push_back(
          {solve_spline(n), branch_end, static_cast<double>(n + 1)});
      knots.push_back(static_cast<double>(n + 1));
    }
  }
  PiecewiseC1Function f(std::move(knots), std::move(segments), cfg.M);

  // Positivity certificate at the configured density and once more at
  // double that density.
  for (const int density :
       {cfg.certify_grid_density, 2 * cfg.certify_grid_density}) {
    for (const Segment& s : f.segments()) {
      if (!(segment_min_on_grid(s, density) > 0.0)) {
        throw std::runtime_error(
            "build_oscillator: positivity certification failed on segment "
            "starting at tau = " +
            std::to_string(s.left));
      }
    }
  }
  return f;
}

std::vector<std::pair<double, double>> branch_peaks(
    const PiecewiseC1Function& f) {
  std::vector<std::pair<double, double>> peaks;
  for (const Segment& s : f.segments()) {
    if (s.is_branch()) {
      peaks.emplace_back(s.right, f.amplitude() * s.value(s.right));
    }
  }
  return peaks;
}

}  // namespace blowup
