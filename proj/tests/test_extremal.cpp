#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "blowup/extremal.hpp"

using namespace blowup;

namespace {

// Frozen reference values, computed independently at 40-digit precision:
//   integral_0^inf e^{-e^s} ds          = 0.21938393439552027
//   X(1) for M = 1                      = 8.615666441813633
//   lim (logX - e^tau) for M = 1        = -0.53228187908783205
//   ratio at tau = 8  (M = 1)           = 1.00216894985
//   ratio at tau = 12 (M = 1)           = 1.00006431548782
constexpr double kTailConst = 0.21938393439552027;
constexpr double kX1 = 8.615666441813633;
constexpr double kLogK1 = -0.53228187908783205;
constexpr double kRatio8 = 1.00216894985;
constexpr double kRatio12 = 1.00006431548782;

double max_deviation(const LogTrajectory& traj, double lo, double hi,
                     double M) {
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.abscissae.size(); ++i) {
    const double tau = traj.abscissae[i];
    if (tau < lo || tau > hi) continue;
    const double ref = closed_form_logX(M, tau);
    worst = std::max(worst,
                     std::abs(traj.log_values[i] - ref) / std::max(1.0, std::abs(ref)));
  }
  return worst;
}

}  // namespace

TEST_CASE("decayed exponential integral and its tail constant") {
  CHECK(decayed_exp_integral(0.0) == 0.0);
  CHECK(decayed_exp_tail_constant() ==
        doctest::Approx(kTailConst).epsilon(1e-11));
  // Monotone and saturating.
  CHECK(decayed_exp_integral(1.0) < decayed_exp_integral(2.0));
  CHECK(decayed_exp_integral(12.0) ==
        doctest::Approx(decayed_exp_tail_constant()).epsilon(1e-14));
}

TEST_CASE("closed form starts at log M") {
  for (const double M : {0.5, 1.0, 4.0}) {
    CHECK(closed_form_logX(M, 0.0) ==
          doctest::Approx(std::log(M)).epsilon(1e-15));
  }
}

TEST_CASE("closed form matches the frozen value at tau = 1") {
  CHECK(std::exp(closed_form_logX(1.0, 1.0)) ==
        doctest::Approx(kX1).epsilon(1e-9));
}

TEST_CASE("logX - e^tau stabilizes to log K") {
  const double d10 = closed_form_logX(1.0, 10.0) - std::exp(10.0);
  const double d12 = closed_form_logX(1.0, 12.0) - std::exp(12.0);
  CHECK(std::abs(d10 - d12) < 1e-8);
  CHECK(d12 == doctest::Approx(kLogK1).epsilon(1e-10));
}

TEST_CASE("integrator agrees with the closed form") {
  const LogTrajectory traj = integrate_transformed(1.0, 12.0, 12 * 256);
  CHECK(traj.provenance == TrajectoryProvenance::integrated);
  CHECK(max_deviation(traj, 0.0, 3.0, 1.0) < 1e-6);
  CHECK(max_deviation(traj, 3.0, 12.0, 1.0) < 1e-4);
  CHECK(traj.log_values.front() == 0.0);
  // Far beyond raw floating-point range of X, still finite in log space.
  CHECK(traj.log_values.back() ==
        doctest::Approx(std::exp(12.0) + kLogK1).epsilon(1e-9));
}

TEST_CASE("integrator shows fourth-order convergence") {
  const double e1 = max_deviation(integrate_transformed(1.0, 2.0, 200), 0.0,
                                  2.0, 1.0);
  const double e2 = max_deviation(integrate_transformed(1.0, 2.0, 400), 0.0,
                                  2.0, 1.0);
  CHECK(e1 / e2 > 10.0);
  CHECK(e1 / e2 < 24.0);
}

TEST_CASE("log trajectory is strictly increasing") {
  const LogTrajectory traj = integrate_transformed(0.7, 6.0, 600);
  for (std::size_t i = 1; i < traj.log_values.size(); ++i) {
    CHECK(traj.log_values[i] > traj.log_values[i - 1]);
  }
}

TEST_CASE("blow-up ratio approaches one from above") {
  const double r8 = blowup_ratio(1.0, 8.0);
  const double r12 = blowup_ratio(1.0, 12.0);
  CHECK(r12 > 0.9);
  CHECK(r12 < 1.05);
  CHECK(std::abs(r12 - 1.0) < std::abs(r8 - 1.0));
  // Against the frozen independent evaluation.
  CHECK(r8 == doctest::Approx(kRatio8).epsilon(1e-9));
  CHECK(r12 == doctest::Approx(kRatio12).epsilon(1e-9));
}

TEST_CASE("ratio limit is amplitude-independent") {
  const double r_half = blowup_ratio(0.5, 12.0);
  const double r_one = blowup_ratio(1.0, 12.0);
  const double r_two = blowup_ratio(2.0, 12.0);
  for (const double r : {r_half, r_one, r_two}) {
    CHECK(r > 0.9);
    CHECK(r < 1.05);
  }
  CHECK(std::abs(r_two - r_half) < 1e-5);
}

TEST_CASE("extremal input validation") {
  CHECK_THROWS_AS(closed_form_logX(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(closed_form_logX(1.0, -1.0), std::domain_error);
  CHECK_THROWS_AS(integrate_transformed(1.0, 16.0, 1000),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate_transformed(1.0, 5.0, 50), std::invalid_argument);
  CHECK_THROWS_AS(blowup_ratio(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(blowup_ratio(-1.0, 2.0), std::invalid_argument);
}
