#pragma once

#include <limits>
#include <vector>

#include "blowup/piecewise.hpp"

namespace blowup {

/// Result of locating the finite blow-up time of the reparameterized
/// profile:  T_star estimates integral_0^inf dtau / X(tau), combining the
/// quadrature over the constructed domain with an explicit majorant of
/// the uncomputed tail.  `table` samples the strictly increasing map
/// t(tau) = integral_0^tau dtau' / X(tau') at segment-refined nodes.
struct ReparamResult {
  double T_star = 0.0;
  double T_star_error_bound = 0.0;
  GridFunction table;  // abscissae = tau nodes, values = t(tau)
  double M = 1.0;      // amplitude of the profile this was computed for
};

/// t(tau) = integral_0^tau dtau' / X(tau'), by adaptive Simpson with
/// panels aligned to the segment knots (the integrand is smooth inside
/// each segment; knots are its only kinks).  The absolute tolerance is
/// split evenly across the knot-aligned pieces.
double time_map(const PiecewiseC1Function& X, double tau,
                double abs_tol = 1e-10);

/// Majorant of integral over [n_max+1-xi_{n_max}, inf) of dtau / Y(tau):
/// the uncomputed bridge piece at depth n_max plus
/// C_geom * sum_{n > n_max} (n+1) (e^{-n/2} + xi_n), where the series has
/// a closed form and C_geom is computed explicitly (see reparam.cpp).
/// Scale by 1/M for a profile of amplitude M.
double tail_series_bound(int n_max);

/// Blow-up time with error bound.  T_star is centered between the
/// computed quadrature and quadrature + tail majorant, so the true value
/// lies within T_star_error_bound = tail/2 of it (up to quadrature
/// tolerance).  If the tail majorant exceeds max_tail_bound, throws with
/// a message giving the depth that would reach the requested accuracy.
ReparamResult blowup_time(
    const PiecewiseC1Function& X, int n_max,
    double max_tail_bound = std::numeric_limits<double>::infinity());

/// Inverse of the time map: the tau with |time_map(X, tau) - t| small,
/// found by bracketing on the monotone table and safeguarded Newton
/// steps using dtau/dt = X (bisection after 3 failed Newton steps).
/// Accepts 0 <= t <= last table value; beyond that throws a range error
/// naming the achievable horizon.
double inverse_time_map(const ReparamResult& r, const PiecewiseC1Function& X,
                        double t);

/// Pushforward x(t) = X(tau(t)) sampled on t_grid.  The result carries
///   values        x(t_i)
///   derivatives   xdot(t_i) = X'(tau_i) * X(tau_i)
///   accumulation  tau(t_i)  (= integral_0^{t_i} x, by the inverse-map identity)
GridFunction pushforward(const ReparamResult& r, const PiecewiseC1Function& X,
                         const std::vector<double>& t_grid);

}  // namespace blowup
