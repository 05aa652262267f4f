#pragma once

#include <utility>
#include <vector>

#include "blowup/piecewise.hpp"

namespace blowup {

/// Hermite anchors a bridge piece must meet: value/slope of branch n at
/// the left end, value/slope of branch n+1 at the right end.
struct HermiteData {
  double v_left = 0.0;
  double s_left = 0.0;
  double v_right = 0.0;
  double s_right = 0.0;
};

struct OscillatorConfig {
  double M = 1.0;                 // initial value, x(0) = M
  int n_max = 8;                  // construction depth; domain ends at n_max+1-xi
  int certify_grid_density = 512; // positivity certification, points per unit tau
};

/// xi_n = 2^{-n-1}, the width of the bridge interval after branch n.
double branch_gap(int n);

/// Exact anchor data for bridge n:
///   v_left  = exp((n+1-xi_n)/2) - exp(n/2) + 1/(n+1)
///   s_left  = exp((n+1-xi_n)/2) / 2
///   v_right = 1/(n+2)
///   s_right = exp((n+1)/2) / 2
HermiteData hermite_data(int n);

/// Solves the two-curvature ansatz for arbitrary anchor data on
/// [left, right).  With h = (right-left)/2,
///   a = (v_L - v_R + (3 s_L + s_R) h/2) / h^2,   b = a + (s_R - s_L)/h.
/// Throws if the resulting pair violates a > 0, b >= 0 or the piece is
/// not strictly positive.
SplineSegment solve_spline(const HermiteData& hd, double left, double right,
                           int n);

/// Bridge piece for the oscillator's own anchors at index n.
SplineSegment solve_spline(int n);

/// Builds the oscillating profile amplitude * Y on [0, n_max+1-xi_{n_max}]
/// with 2*n_max+1 segments (branches n = 0..n_max, bridges n = 0..n_max-1).
/// Certifies strict positivity on the configured grid density and once
/// more at double that density before returning.
PiecewiseC1Function build_oscillator(const OscillatorConfig& cfg);

/// Local maxima of the profile: the left limit at the right end of every
/// branch, as (tau, value) pairs in increasing tau order.
std::vector<std::pair<double, double>> branch_peaks(
    const PiecewiseC1Function& f);

}  // namespace blowup
