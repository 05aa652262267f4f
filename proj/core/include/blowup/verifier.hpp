#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "blowup/piecewise.hpp"
#include "blowup/reparam.hpp"

namespace blowup {

/// Pointwise residual evaluation over a grid.  pass iff max_residual <= slack.
struct ResidualReport {
  std::vector<double> grid;
  std::vector<double> residuals;
  double max_residual = 0.0;
  double argmax = 0.0;
  std::size_t argmax_index = 0;
  double slack = 0.0;
  bool pass = false;
};

/// Segment-aligned grid: every segment of f sampled on its closed
/// interval with at least `density` points per unit tau, evaluating the
/// segment's own formula at both endpoints (so knots contribute both
/// one-sided limits and no panel straddles a kink).
std::vector<double> segment_aligned_grid(const PiecewiseC1Function& f,
                                         int density);

/// residual(tau) = X'(tau) - 1 - X(tau) e^tau with analytic X'.
/// Samples each segment on its closed interval at the given density.
ResidualReport residual_transformed(const PiecewiseC1Function& X, int density,
                                    double slack);

/// Same residual over a caller-supplied grid, using right-continuous
/// evaluation at knots.
ResidualReport residual_transformed(const PiecewiseC1Function& X,
                                    const std::vector<double>& tau_grid,
                                    double slack);

/// Same residual for a sampled trajectory in the tau variable: values = X,
/// derivatives = X'.  With `normalized` set the residual is divided by
/// 1 + X e^tau, which keeps equality-case checks meaningful where X is
/// large.  Throws if the derivatives channel is missing.
ResidualReport residual_transformed_sampled(const GridFunction& g,
                                            double slack,
                                            bool normalized = false);

/// residual(t) = xdot - x - x^2 exp(tau(t)) for a sampled trajectory in
/// the original time variable; requires the derivatives and accumulation
/// (tau(t) = integral_0^t x) channels.
ResidualReport residual_original(const GridFunction& x, double slack);

struct PropertyCheck {
  bool pass = false;
  std::string name;
  std::string detail;   // human-readable measurement or failure location
  double location = 0.0;
};

/// Certificate for the four oscillation properties of the constructed
/// profile:
///   (i)   x(0) = M
///   (ii)  the original-variable residual passes on a pushforward grid
///   (iii) branch peaks dominate an increasing unbounded witness sequence
///   (iv)  x(t_n) = M/(n+1) at t_n = t(n), with t_n strictly increasing
///         and T_star - t_N within the remaining-integral majorant
struct OscillationCertificate {
  PropertyCheck initial_value;
  PropertyCheck inequality;
  PropertyCheck unbounded_peaks;
  PropertyCheck vanishing_sequence;
  std::vector<double> t_n;
  std::vector<double> x_at_t_n;
  double liminf_witness = 0.0;  // min of x over the last inter-peak window
  bool pass() const {
    return initial_value.pass && inequality.pass && unbounded_peaks.pass &&
           vanishing_sequence.pass;
  }
};

OscillationCertificate oscillation_certificate(const PiecewiseC1Function& X,
                                               const ReparamResult& r,
                                               double M, int N,
                                               int grid_density = 128);

}  // namespace blowup
