#include "blowup/reparam.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "blowup/oscillator.hpp"
#include "blowup/quadrature.hpp"

namespace blowup {

namespace {

constexpr double kTimeMapTol = 1e-10;

// Integral of 1/X over [a, b] inside a single segment.
double segment_time(const PiecewiseC1Function& X, const Segment& s, double a,
                    double b, double tol) {
  const double amp = X.amplitude();
  return adaptive_simpson(
             [&s, amp](double tau) { return 1.0 / (amp * s.value(tau)); }, a,
             b, tol)
      .value;
}

// Majorant of the unit-amplitude branch contribution
//   integral_n^{n+1-xi_n} dtau / (e^{tau/2} - e^{n/2} + 1/(n+1)),
// from e^{s/2} - 1 >= s/2:
//   <= integral_0^1 ds / (e^{n/2} s/2 + 1/(n+1))
//    = 2 e^{-n/2} log(1 + (n+1) e^{n/2} / 2).
double branch_majorant(int n) {
  return 2.0 * std::exp(-0.5 * n) *
         std::log1p(0.5 * (n + 1) * std::exp(0.5 * n));
}

// Lower bound for a bridge-piece minimum straight from the anchor data,
// in the same cancellation-free form as SplineSegment::min_value.  No
// segment construction, so it stays usable past the knot-resolution cap
// on build depth.
double bridge_min_lower_bound(int n) {
  const HermiteData hd = hermite_data(n);
  const double h = 0.5 * branch_gap(n);
  const double den =
      2.0 * (hd.v_left - hd.v_right) + h * (hd.s_left + 3.0 * hd.s_right);
  return hd.v_right - h * h * hd.s_right * hd.s_right / den;
}

// Majorant of the unit-amplitude bridge contribution: interval width over
// the piece minimum.
double bridge_majorant(int n) {
  return branch_gap(n) / bridge_min_lower_bound(n);
}

double series_term(int n) {
  return (n + 1) * (std::exp(-0.5 * n) + branch_gap(n));
}

// sum_{n >= m} (n+1) x^n = x^m ((m+1) - m x) / (1-x)^2.
double weighted_geometric_tail(int m, double x) {
  return std::pow(x, m) * ((m + 1) - m * x) / ((1.0 - x) * (1.0 - x));
}

}  // namespace

double tail_series_bound(int n_max) {
  if (n_max < 1) {
    throw std::invalid_argument("tail_series_bound: n_max must be >= 1");
  }
  // C_geom = sup over n > n_max of
  //   [branch_majorant(n) + bridge_majorant(n)] / [(n+1)(e^{-n/2} + xi_n)].
  // Both component ratios decrease beyond n ~ 12 (the branch ratio peaks
  // there and the bridge ratio behaves like (n+2)/(n+1)), so a window of
  // 64 indices past n_max attains the supremum.
  double c_geom = 0.0;
  for (int n = n_max + 1; n <= n_max + 64; ++n) {
    const double ratio =
        (branch_majorant(n) + bridge_majorant(n)) / series_term(n);
    c_geom = std::max(c_geom, ratio);
  }
  const double s_exp =
      weighted_geometric_tail(n_max + 1, std::exp(-0.5));
  const double s_xi = 0.5 * weighted_geometric_tail(n_max + 1, 0.5);
  // The constructed domain stops at n_max+1-xi_{n_max}; the bridge piece
  // at depth n_max is part of the tail as well.
  return bridge_majorant(n_max) + c_geom * (s_exp + s_xi);
}

double time_map(const PiecewiseC1Function& X, double tau, double abs_tol) {
  if (!(tau >= 0.0) || !(tau <= X.domain_end())) {
    throw std::domain_error("time_map: tau = " + std::to_string(tau) +
                            " outside [0, " +
                            std::to_string(X.domain_end()) + "]");
  }
  if (tau == 0.0) return 0.0;
  const auto& segs = X.segments();
  std::size_t pieces = 0;
  for (const Segment& s : segs) {
    if (s.left >= tau) break;
    ++pieces;
  }
  const double tol = abs_tol / static_cast<double>(std::max<std::size_t>(1, pieces));
  double t = 0.0;
  for (const Segment& s : segs) {
    if (s.left >= tau) break;
    t += segment_time(X, s, s.left, std::min(tau, s.right), tol);
  }
  return t;
}

ReparamResult blowup_time(const PiecewiseC1Function& X, int n_max,
                          double max_tail_bound) {
  const auto& segs = X.segments();
  if (segs.size() != static_cast<std::size_t>(2 * n_max + 1)) {
    throw std::invalid_argument(
        "blowup_time: profile does not match depth n_max = " +
        std::to_string(n_max));
  }
  const double M = X.amplitude();
  const double tail = tail_series_bound(n_max) / M;
  if (!(tail <= max_tail_bound)) {
    // The series terms at least halve per +2 in depth, so this estimate
    // is conservative.
    int deeper = n_max;
    double t = tail;
    while (t > max_tail_bound && deeper < 40) {
      deeper += 2;
      t *= 0.5;
    }
    throw std::runtime_error(
        "blowup_time: tail bound " + std::to_string(tail) +
        " exceeds the requested " + std::to_string(max_tail_bound) +
        "; rebuild with n_max >= " + std::to_string(deeper));
  }

  ReparamResult r;
  r.M = M;
  r.table.abscissae.push_back(0.0);
  r.table.values.push_back(0.0);
  const double tol = kTimeMapTol / static_cast<double>(segs.size());
  double t = 0.0;
  for (const Segment& s : segs) {
    // Refine branches more than the short bridge intervals.
    const int nodes = s.is_branch() ? 8 : 4;
    for (int i = 1; i <= nodes; ++i) {
      const double lo = r.table.abscissae.back();
      const double hi =
          (i == nodes) ? s.right : s.left + (s.right - s.left) * i / nodes;
      t += segment_time(X, s, lo, hi, tol / nodes);
      r.table.abscissae.push_back(hi);
      r.table.values.push_back(t);
    }
  }
  r.T_star = t + 0.5 * tail;
  r.T_star_error_bound = 0.5 * tail + kTimeMapTol;
  return r;
}

double inverse_time_map(const ReparamResult& r, const PiecewiseC1Function& X,
                        double t) {
  const auto& taus = r.table.abscissae;
  const auto& ts = r.table.values;
  if (!(t >= 0.0) || !(t <= ts.back())) {
    throw std::out_of_range(
        "inverse_time_map: t = " + std::to_string(t) +
        " beyond the computed horizon t_max = " + std::to_string(ts.back()));
  }
  if (t == 0.0) return 0.0;
  if (t == ts.back()) return taus.back();

  const auto it = std::upper_bound(ts.begin(), ts.end(), t);
  std::size_t i = static_cast<std::size_t>(it - ts.begin()) - 1;
  double lo = taus[i], hi = taus[i + 1];
  const double piece_tol = 1e-13;
  const auto g = [&](double tau) {
    return ts[i] + adaptive_simpson(
                       [&X](double s) { return 1.0 / X.eval(s); }, taus[i],
                       tau, piece_tol)
                       .value -
           t;
  };

  // Newton with dtau/dt = X, bracket-safeguarded; bisection after 3
  // consecutive steps that fail to shrink the residual.
  double tau = lo + (hi - lo) * (t - ts[i]) / (ts[i + 1] - ts[i]);
  double res = g(tau);
  int failed = 0;
  for (int iter = 0; iter < 60; ++iter) {
    if (std::abs(res) <= 1e-13 * std::max(1.0, std::abs(t))) return tau;
    if (res > 0.0) {
      hi = tau;
    } else {
      lo = tau;
    }
    double next = tau - res * X.eval(tau);
    if (failed >= 3 || !(next > lo) || !(next < hi)) {
      next = 0.5 * (lo + hi);
    }
    const double next_res = g(next);
    failed = (std::abs(next_res) < std::abs(res)) ? 0 : failed + 1;
    tau = next;
    res = next_res;
  }
  if (std::abs(res) <= 1e-9) return tau;
  throw std::runtime_error("inverse_time_map: did not converge at t = " +
                           std::to_string(t));
}

GridFunction pushforward(const ReparamResult& r, const PiecewiseC1Function& X,
                         const std::vector<double>& t_grid) {
  GridFunction g;
  g.abscissae = t_grid;
  g.values.reserve(t_grid.size());
  g.derivatives.emplace();
  g.derivatives->reserve(t_grid.size());
  g.accumulation.emplace();
  g.accumulation->reserve(t_grid.size());
  for (const double t : t_grid) {
    const double tau = inverse_time_map(r, X, t);
    const double x = X.eval(tau);
    g.values.push_back(x);
    g.derivatives->push_back(X.eval_derivative(tau) * x);
    g.accumulation->push_back(tau);
  }
  return g;
}

}  // namespace blowup
