#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

namespace blowup {

/// Exponential branch segment: evaluates
///   exp(tau/2) - exp(n/2) + 1/(n+1)
/// on its half-open interval [n, n+1 - 2^{-n-1}).
struct ExpBranch {
  int n = 0;

  double value(double tau) const;
  double slope(double tau) const;
};

/// Quadratic bridge piece joining branch n to branch n+1 on
/// [n+1-xi_n, n+1), xi_n = 2^{-n-1}.  Curvature is -a left of the
/// midpoint and +b right of it, so the piece is concave then convex and
/// C1 at the midpoint by construction.  The four Hermite anchors
/// (value and slope at both ends) determine (a, b) in closed form.
struct SplineSegment {
  int n = 0;
  double left = 0.0;
  double right = 0.0;
  double mid = 0.0;      // left + (right-left)/2
  double v_left = 0.0;   // value anchored at `left`
  double s_left = 0.0;   // slope anchored at `left`
  double v_right = 0.0;  // value anchored at `right`
  double s_right = 0.0;  // slope anchored at `right`
  double a = 0.0;        // curvature magnitude on [left, mid)
  double b = 0.0;        // curvature magnitude on [mid, right)

  double value(double tau) const;
  double slope(double tau) const;

  /// Closed-form minimum over [left, right].  The interior vertex of the
  /// convex half carries the minimum whenever v_left > v_right, which the
  /// anchor data guarantees here.  Evaluated in the cancellation-free form
  ///   v_right - h^2 s_right^2 / (2 (v_left - v_right) + h (s_left + 3 s_right)).
  double min_value() const;
};

/// One typed segment of a piecewise function; the interval is half-open
/// [left, right) and must coincide with a consecutive knot pair.
struct Segment {
  std::variant<ExpBranch, SplineSegment> kind;
  double left = 0.0;
  double right = 0.0;

  double value(double tau) const;
  double slope(double tau) const;
  bool is_branch() const { return std::holds_alternative<ExpBranch>(kind); }
};

/// Sampled trajectory.  `values` hold natural logs when `log_scale` is set.
/// `derivatives` and `accumulation` (a running-integral channel, e.g.
/// tau(t) = integral of x) are optional and filled by producers that have
/// them.
struct GridFunction {
  std::vector<double> abscissae;  // strictly increasing
  std::vector<double> values;
  bool log_scale = false;
  std::optional<std::vector<double>> derivatives;
  std::optional<std::vector<double>> accumulation;
};

/// One continuity violation found by the audit.
struct KnotGap {
  double knot = 0.0;
  double value_gap = 0.0;
  double slope_gap = 0.0;
};

/// Piecewise-defined function on [0, domain_end] with typed segments.
/// Evaluation is right-continuous at interior knots (segments own
/// [left, right)); domain_end itself evaluates on the last segment.
/// `amplitude` scales every value and slope, so the same segment data
/// serves the whole family amplitude * Y.
///
/// Immutable after construction; eval/eval_derivative are pure.
class PiecewiseC1Function {
 public:
  /// Validates structure only: knots strictly increasing, one segment per
  /// consecutive knot pair, segment intervals matching the knots.  C1
  /// matching is certified separately by continuity_audit.
  PiecewiseC1Function(std::vector<double> knots, std::vector<Segment> segments,
                      double amplitude = 1.0);

  double eval(double tau) const;
  double eval_derivative(double tau) const;

  /// Returns every interior knot whose one-sided value or slope mismatch
  /// exceeds tol; an empty result certifies C1 within tol.
  std::vector<KnotGap> continuity_audit(double tol) const;

  double domain_end() const { return knots_.back(); }
  double amplitude() const { return amplitude_; }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<Segment>& segments() const { return segments_; }

 private:
  std::size_t segment_index(double tau) const;

  std::vector<double> knots_;
  std::vector<Segment> segments_;
  double amplitude_ = 1.0;
};

}  // namespace blowup
