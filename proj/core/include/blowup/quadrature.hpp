#pragma once

#include <cmath>
#include <stdexcept>

namespace blowup {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

namespace detail {

template <typename F>
QuadratureResult simpson_recurse(const F& f, double a, double b, double fa,
                                 double fm, double fb, double whole,
                                 double tol, int depth,
                                 long& evaluations) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  evaluations += 2;
  const double h = b - a;
  const double left = (h / 12.0) * (fa + 4.0 * flm + fm);
  const double right = (h / 12.0) * (fm + 4.0 * frm + fb);
  const double split = left + right;
  const double err = (split - whole) / 15.0;
  if (depth <= 0) {
    throw std::runtime_error(
        "adaptive_simpson: recursion depth exhausted before reaching the "
        "requested tolerance");
  }
  if (std::abs(err) <= tol || h <= 1e-14 * (std::abs(a) + std::abs(b))) {
    return {split + err, std::abs(err), evaluations};
  }
  const QuadratureResult l = simpson_recurse(f, a, m, fa, flm, fm, left,
                                             0.5 * tol, depth - 1, evaluations);
  const QuadratureResult r = simpson_recurse(f, m, b, fm, frm, fb, right,
                                             0.5 * tol, depth - 1, evaluations);
  return {l.value + r.value, l.error_estimate + r.error_estimate, evaluations};
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to the given absolute
/// tolerance.  The returned error_estimate is the accumulated local
/// Richardson estimate, not a rigorous bound.  Throws std::runtime_error
/// if the recursion depth is exhausted (non-convergence).
template <typename F>
QuadratureResult adaptive_simpson(const F& f, double a, double b,
                                  double abs_tol, int max_depth = 48) {
  if (!(abs_tol > 0.0)) {
    throw std::invalid_argument("adaptive_simpson: abs_tol must be positive");
  }
  if (a == b) return {0.0, 0.0, 0};
  long evaluations = 3;
  const double fa = f(a);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
  return detail::simpson_recurse(f, a, b, fa, fm, fb, whole, abs_tol,
                                 max_depth, evaluations);
}

}  // namespace blowup
