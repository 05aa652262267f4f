#include "blowup/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "blowup/oscillator.hpp"

namespace blowup {

namespace {

ResidualReport finalize(std::vector<double> grid, std::vector<double> residuals,
                        double slack) {
  ResidualReport rep;
  rep.grid = std::move(grid);
  rep.residuals = std::move(residuals);
  rep.slack = slack;
  rep.max_residual = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rep.residuals.size(); ++i) {
    if (rep.residuals[i] > rep.max_residual) {
      rep.max_residual = rep.residuals[i];
      rep.argmax = rep.grid[i];
      rep.argmax_index = i;
    }
  }
  rep.pass = rep.max_residual <= slack;
  return rep;
}

int points_for(const Segment& s, int density) {
  return std::max(2, static_cast<int>(std::ceil((s.right - s.left) * density)));
}

}  // namespace

std::vector<double> segment_aligned_grid(const PiecewiseC1Function& f,
                                         int density) {
  if (density < 1) {
    throw std::invalid_argument("segment_aligned_grid: density must be >= 1");
  }
  std::vector<double> grid;
  for (const Segment& s : f.segments()) {
    const int k = points_for(s, density);
    for (int i = 0; i <= k; ++i) {
      grid.push_back(i == k ? s.right : s.left + (s.right - s.left) * i / k);
    }
  }
  return grid;
}

ResidualReport residual_transformed(const PiecewiseC1Function& X, int density,
                                    double slack) {
  if (density < 1) {
    throw std::invalid_argument("residual_transformed: density must be >= 1");
  }
  const double amp = X.amplitude();
  std::vector<double> grid;
  std::vector<double> residuals;
  for (const Segment& s : X.segments()) {
    const int k = points_for(s, density);
    for (int i = 0; i <= k; ++i) {
      const double tau =
          i == k ? s.right : s.left + (s.right - s.left) * i / k;
      // The segment's own formula at both endpoints, so interior knots
      // contribute both one-sided limits.
      const double value = amp * s.value(tau);
      const double deriv = amp * s.slope(tau);
      grid.push_back(tau);
      residuals.push_back(deriv - 1.0 - value * std::exp(tau));
    }
  }
  return finalize(std::move(grid), std::move(residuals), slack);
}

ResidualReport residual_transformed(const PiecewiseC1Function& X,
                                    const std::vector<double>& tau_grid,
                                    double slack) {
  std::vector<double> residuals;
  residuals.reserve(tau_grid.size());
  for (const double tau : tau_grid) {
    residuals.push_back(X.eval_derivative(tau) - 1.0 -
                        X.eval(tau) * std::exp(tau));
  }
  return finalize(tau_grid, std::move(residuals), slack);
}

ResidualReport residual_transformed_sampled(const GridFunction& g,
                                            double slack, bool normalized) {
  if (!g.derivatives || g.derivatives->size() != g.values.size()) {
    throw std::invalid_argument(
        "residual_transformed_sampled: derivatives channel required");
  }
  if (g.log_scale) {
    throw std::invalid_argument(
        "residual_transformed_sampled: expects linear-scale values");
  }
  std::vector<double> residuals;
  residuals.reserve(g.values.size());
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    const double rhs = 1.0 + g.values[i] * std::exp(g.abscissae[i]);
    double res = (*g.derivatives)[i] - rhs;
    if (normalized) res /= rhs;
    residuals.push_back(res);
  }
  return finalize(g.abscissae, std::move(residuals), slack);
}

ResidualReport residual_original(const GridFunction& x, double slack) {
  if (!x.derivatives || x.derivatives->size() != x.values.size()) {
    throw std::invalid_argument(
        "residual_original: derivatives channel required");
  }
  if (!x.accumulation || x.accumulation->size() != x.values.size()) {
    throw std::invalid_argument(
        "residual_original: accumulation channel required");
  }
  if (x.log_scale) {
    throw std::invalid_argument("residual_original: expects linear-scale values");
  }
  std::vector<double> residuals;
  residuals.reserve(x.values.size());
  for (std::size_t i = 0; i < x.values.size(); ++i) {
    const double v = x.values[i];
    residuals.push_back((*x.derivatives)[i] - v -
                        v * v * std::exp((*x.accumulation)[i]));
  }
  return finalize(x.abscissae, std::move(residuals), slack);
}

OscillationCertificate oscillation_certificate(const PiecewiseC1Function& X,
                                               const ReparamResult& r,
                                               double M, int N,
                                               int grid_density) {
  if (N < 1 || X.segments().size() < static_cast<std::size_t>(2 * N + 1)) {
    throw std::invalid_argument(
        "oscillation_certificate: profile not built to depth N = " +
        std::to_string(N));
  }
  OscillationCertificate cert;

  // (i) initial value.
  const double x0 = X.eval(0.0);
  cert.initial_value.name = "initial value x(0) = M";
  cert.initial_value.pass = (x0 == M);
  cert.initial_value.location = 0.0;
  cert.initial_value.detail =
      "x(0) = " + std::to_string(x0) + ", M = " + std::to_string(M);

  // (ii) original-variable residual on a pushforward grid.  The samples
  // carry analytic derivatives, so the slack only absorbs the inverse-map
  // roundtrip noise.
  {
    std::vector<double> t_grid;
    const std::vector<double> taus = segment_aligned_grid(X, grid_density);
    t_grid.reserve(taus.size());
    // Clamp to the table horizon: an independent quadrature of t(tau) at
    // domain_end can overshoot the cumulative table value by ~1e-12.
    const double horizon = r.table.values.back();
    for (const double tau : taus) {
      t_grid.push_back(std::min(time_map(X, tau), horizon));
    }
    const GridFunction push = pushforward(r, X, t_grid);
    const ResidualReport rep = residual_original(push, 1e-6);
    cert.inequality.name = "differential inequality residual";
    cert.inequality.pass = rep.pass;
    cert.inequality.location = rep.argmax;
    cert.inequality.detail =
        "max residual " + std::to_string(rep.max_residual) + " at t = " +
        std::to_string(rep.argmax);
  }

  // (iii) peaks dominate the increasing unbounded witness 0.6 M e^{n/2}.
  {
    const auto peaks = branch_peaks(X);
    bool ok = true;
    double worst_margin = std::numeric_limits<double>::infinity();
    double worst_tau = 0.0;
    for (std::size_t n = 0; n < peaks.size(); ++n) {
      const double witness = 0.6 * M * std::exp(0.5 * static_cast<double>(n));
      const double margin = peaks[n].second / witness;
      if (margin < worst_margin) {
        worst_margin = margin;
        worst_tau = peaks[n].first;
      }
      ok = ok && peaks[n].second >= witness;
    }
    cert.unbounded_peaks.name = "peaks dominate unbounded witness";
    cert.unbounded_peaks.pass = ok;
    cert.unbounded_peaks.location = worst_tau;
    cert.unbounded_peaks.detail =
        "min peak/witness ratio " + std::to_string(worst_margin) +
        ", top peak " + std::to_string(peaks.back().second);
  }

  // (iv) the vanishing sequence x(t_n) = M/(n+1).
  {
    bool ok = true;
    std::string fail;
    double fail_at = 0.0;
    double prev_t = -1.0;
    for (int n = 0; n <= N; ++n) {
      const double t_n = time_map(X, static_cast<double>(n));
      const double x_n = X.eval(inverse_time_map(r, X, t_n));
      cert.t_n.push_back(t_n);
      cert.x_at_t_n.push_back(x_n);
      const double target = M / (n + 1);
      if (!(t_n > prev_t)) {
        ok = false;
        fail = "t_n not strictly increasing at n = " + std::to_string(n);
        fail_at = t_n;
      } else if (std::abs(x_n - target) > 1e-9 * target) {
        ok = false;
        fail = "x(t_n) off target at n = " + std::to_string(n) + ": " +
               std::to_string(x_n) + " vs " + std::to_string(target);
        fail_at = t_n;
      }
      prev_t = t_n;
    }
    const double remaining =
        (r.table.values.back() - cert.t_n.back()) + 2.0 * r.T_star_error_bound;
    if (ok && !(r.T_star > cert.t_n.back() &&
                r.T_star - cert.t_n.back() <= remaining)) {
      ok = false;
      fail = "T_star - t_N outside the remaining-integral majorant";
      fail_at = cert.t_n.back();
    }
    cert.vanishing_sequence.name = "vanishing sequence x(t_n) = M/(n+1)";
    cert.vanishing_sequence.pass = ok;
    cert.vanishing_sequence.location = fail_at;
    cert.vanishing_sequence.detail =
        ok ? "T_star - t_N = " + std::to_string(r.T_star - cert.t_n.back())
           : fail;
  }

  // The dip in the last inter-peak window, the desk-scale liminf witness.
  {
    double mn = std::numeric_limits<double>::infinity();
    const int k = std::max(2, grid_density);
    for (int i = 0; i <= k; ++i) {
      const double tau = (N - 1) + static_cast<double>(i) / k;
      mn = std::min(mn, X.eval(tau));
    }
    cert.liminf_witness = mn;
  }
  return cert;
}

}  // namespace blowup
