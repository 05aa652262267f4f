#include "blowup/extremal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "blowup/quadrature.hpp"

namespace blowup {

namespace {

// exp(-e^s) underflows past s ~ 6.4 (e^{-e^6.4} < 1e-260); integrating to
// 8 leaves an analytic remainder below 1e-1290.
constexpr double kDecayWindow = 8.0;

double decayed_exp(double s) { return std::exp(-std::exp(s)); }

void validate_initial(double M) {
  if (!(M > 0.0) || !std::isfinite(M)) {
    throw std::invalid_argument("extremal: M must be positive and finite");
  }
}

}  // namespace

double decayed_exp_integral(double tau) {
  if (!(tau >= 0.0)) {
    throw std::domain_error("decayed_exp_integral: tau must be >= 0");
  }
  const double hi = std::min(tau, kDecayWindow);
  if (hi == 0.0) return 0.0;
  return adaptive_simpson(decayed_exp, 0.0, hi, 1e-13).value;
}

double decayed_exp_tail_constant() {
  static const double value =
      adaptive_simpson(decayed_exp, 0.0, kDecayWindow, 1e-13).value;
  return value;
}

double closed_form_logX(double M, double tau) {
  validate_initial(M);
  if (!(tau >= 0.0)) {
    throw std::domain_error("closed_form_logX: tau must be >= 0");
  }
  const double g = M / std::numbers::e + decayed_exp_integral(tau);
  return std::exp(tau) + std::log(g);
}

LogTrajectory integrate_transformed(double M, double tau_max, int steps) {
  validate_initial(M);
  if (!(tau_max > 0.0) || tau_max > 15.0) {
    throw std::invalid_argument(
        "integrate_transformed: tau_max must lie in (0, 15]");
  }
  if (steps < 100) {
    throw std::invalid_argument("integrate_transformed: steps must be >= 100");
  }
  const double h = tau_max / steps;
  if (!(h > 0.0)) {
    throw std::runtime_error("integrate_transformed: step size underflow");
  }
  const auto f = [](double tau, double y) {
    return std::exp(-y) + std::exp(tau);
  };
  LogTrajectory traj;
  traj.provenance = TrajectoryProvenance::integrated;
  traj.abscissae.reserve(steps + 1);
  traj.log_values.reserve(steps + 1);
  double y = std::log(M);
  traj.abscissae.push_back(0.0);
  traj.log_values.push_back(y);
  for (int i = 0; i < steps; ++i) {
    const double tau = tau_max * i / steps;
    const double k1 = f(tau, y);
    const double k2 = f(tau + 0.5 * h, y + 0.5 * h * k1);
    const double k3 = f(tau + 0.5 * h, y + 0.5 * h * k2);
    const double k4 = f(tau + h, y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!std::isfinite(y)) {
      throw std::runtime_error(
          "integrate_transformed: trajectory left finite range at tau = " +
          std::to_string(tau + h));
    }
    traj.abscissae.push_back((i + 1 == steps) ? tau_max
                                              : tau_max * (i + 1) / steps);
    traj.log_values.push_back(y);
  }
  return traj;
}

double blowup_ratio(double M, double tau) {
  validate_initial(M);
  if (!(tau > 0.0)) {
    throw std::domain_error(
        "blowup_ratio: tau must be positive so that e^tau > 1");
  }
  const double z = std::exp(tau);
  const double g_tau = M / std::numbers::e + decayed_exp_integral(tau);
  const double k_lim = M / std::numbers::e + decayed_exp_tail_constant();
  // T_star - t = integral_tau^inf e^{-e^sigma} / G(sigma) dsigma with G
  // pinned between g_tau and k_lim; with u = e^sigma the integral is
  // (e^{-z}/z)(1 - 1/z + R)/K, |R| <= 2/z^2.  Hence
  //   L = log(1/(T_star - t)) = z + tau + log K - log W,   W = 1 - 1/z,
  //   ratio = (L / z) * W * (G(tau) / K).
  const double w = 1.0 - 1.0 / z;
  const double L = z + tau + std::log(k_lim) - std::log(w);
  return (L / z) * w * (g_tau / k_lim);
}

}  // namespace blowup
