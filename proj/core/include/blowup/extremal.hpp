#pragma once

#include <vector>

namespace blowup {

enum class TrajectoryProvenance { closed_form, integrated };

/// Trajectory stored as natural logs; the equality-case solution exceeds
/// double range for tau beyond ~6.5, log space does not.
struct LogTrajectory {
  std::vector<double> abscissae;
  std::vector<double> log_values;
  TrajectoryProvenance provenance = TrajectoryProvenance::integrated;
};

/// integral_0^inf exp(-e^s) ds, precomputed once by quadrature with
/// absolute error <= 1e-12 and cached.
double decayed_exp_tail_constant();

/// integral_0^tau exp(-e^s) ds (the integrand underflows past s ~ 6.5;
/// the analytic remainder beyond the integration window is below 1e-300).
double decayed_exp_integral(double tau);

/// Equality case of dX/dtau = 1 + X e^tau with X(0) = M, solved with the
/// integrating factor exp(-e^tau):
///   log X(tau) = e^tau + log(M/e + integral_0^tau exp(-e^s) ds).
double closed_form_logX(double M, double tau);

/// Integrates d(logX)/dtau = exp(-logX) + exp(tau) (both terms
/// overflow-safe) with classical fixed-step RK4 from logX(0) = log M.
LogTrajectory integrate_transformed(double M, double tau_max, int steps);

/// (T_star - t) * log(1/(T_star - t)) * x(t) at t = t(tau) for the
/// equality-case solution.  T_star - t = integral_tau^inf dsigma/X(sigma)
/// is evaluated in log space through the substitution u = e^sigma and the
/// expansion int_z^inf e^{-u}/u du = (e^{-z}/z)(1 - 1/z + R), |R| <= 2/z^2,
/// with the slowly varying factor pinned between its value at tau and its
/// limit.  Accuracy degrades like e^{-e^tau} + 1/e^{2 tau} for small tau;
/// the returned value is the honest evaluation either way.
double blowup_ratio(double M, double tau);

}  // namespace blowup
