// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails.  Criterion 9 drives the command-line tool named by the
// BLOWUP_LAB_BIN environment variable.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "blowup/envelope.hpp"
#include "blowup/extremal.hpp"
#include "blowup/oscillator.hpp"
#include "blowup/reparam.hpp"
#include "blowup/verifier.hpp"
#include "oracles.hpp"

using namespace blowup;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int idx, bool pass, const std::string& name,
            const std::string& detail) {
  std::printf("[%d/9] %s  %s  (%s)\n", idx, pass ? "PASS" : "FAIL",
              name.c_str(), detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(double v, int digits = 3) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

// --------------------------------------------------------------------------

void criterion_1_construction_fidelity() {
  bool pass = true;
  double worst = 0.0;
  for (const double M : {0.5, 1.0, 10.0}) {
    const auto X = build_oscillator({M, 8, 512});
    pass = pass && (X.eval(0.0) == M);
    for (int n = 0; n <= 8; ++n) {
      const double rel = std::abs(X.eval(n) * (n + 1) / M - 1.0);
      worst = std::max(worst, rel);
      pass = pass && rel <= 1e-12;
    }
    pass = pass && X.continuity_audit(1e-10).empty();
  }
  report(1, pass, "construction fidelity",
         "x(0) exact; max |x(n)(n+1)/M - 1| = " + fmt(worst) +
             "; audit empty at 1e-10");
}

void criterion_2_inequality_certificate() {
  bool pass = true;
  double worst_change = 0.0;
  double dom = 0.0;
  for (const double M : {0.5, 1.0, 10.0}) {
    const auto X = build_oscillator({M, 8, 512});
    dom = X.domain_end();
    const ResidualReport base = residual_transformed(X, 512, 0.0);
    const ResidualReport dense = residual_transformed(X, 1024, 0.0);
    pass = pass && base.pass && dense.pass;
    const double change = std::abs(base.max_residual - dense.max_residual) /
                          std::abs(base.max_residual);
    worst_change = std::max(worst_change, change);
    pass = pass && change < 0.10;
  }
  report(2, pass, "inequality certificate",
         "slack 0 on [0, " + fmt(dom, 10) + "] for M in {0.5, 1, 10}; density "
         "doubling moved max residual by " + fmt(worst_change * 100) + "%");
}

void criterion_3_spline_shape() {
  bool pass = true;
  double worst_cond = 0.0;
  for (int n = 0; n <= 8; ++n) {
    const SplineSegment s = solve_spline(n);
    const HermiteData hd = hermite_data(n);
    pass = pass && s.a > 0.0 && s.b > 0.0;
    // End anchors, plus the midpoint consistency of the two quadratic
    // halves -- the two linear equations the curvature solve must satisfy.
    const double h = s.mid - s.left;
    const double vm_left = hd.v_left + hd.s_left * h - 0.5 * s.a * h * h;
    const double vm_right = hd.v_right - hd.s_right * h + 0.5 * s.b * h * h;
    const double sm_left = hd.s_left - s.a * h;
    const double sm_right = hd.s_right - s.b * h;
    const double conds[6] = {
        std::abs(s.value(s.left) / hd.v_left - 1.0),
        std::abs(s.slope(s.left) / hd.s_left - 1.0),
        std::abs(s.value(s.right) / hd.v_right - 1.0),
        std::abs(s.slope(s.right) / hd.s_right - 1.0),
        std::abs(vm_left - vm_right) / std::max(1.0, std::abs(vm_left)),
        std::abs(sm_left - sm_right) / std::max(1.0, std::abs(sm_left))};
    for (const double c : conds) {
      worst_cond = std::max(worst_cond, c);
      pass = pass && c <= 1e-12;
    }
  }
  const SplineSegment s0 = solve_spline(0);
  pass = pass && std::abs(s0.a / 18.044 - 1.0) <= 1e-3;
  pass = pass && std::abs(s0.b / 18.773 - 1.0) <= 1e-3;
  report(3, pass, "spline shape",
         "a, b > 0 and anchors to " + fmt(worst_cond) + " for n <= 8; "
         "(a0, b0) = (" + fmt(s0.a) + ", " + fmt(s0.b) + ")");
}

void criterion_4_blowup_time() {
  bool pass = true;
  std::vector<double> scaled;
  for (const double M : {0.5, 1.0, 10.0}) {
    const auto X = build_oscillator({M, 8, 512});
    scaled.push_back(blowup_time(X, 8).T_star * M);
  }
  double spread = 0.0;
  for (const double s : scaled) {
    spread = std::max(spread, std::abs(s / scaled[0] - 1.0));
  }
  pass = pass && spread <= 1e-8;
  const double tail30 = tail_series_bound(30);
  pass = pass && tail30 < 1e-4;
  report(4, pass, "blow-up time",
         "T* M spread " + fmt(spread) + " across M; tail bound at depth 30 = " +
             fmt(tail30));
}

void criterion_5_oscillation_certificate() {
  const auto X = build_oscillator({1.0, 8, 512});
  const ReparamResult r = blowup_time(X, 8);
  const OscillationCertificate cert = oscillation_certificate(X, r, 1.0, 8);
  bool pass = cert.pass();
  const double x3_err = std::abs(cert.x_at_t_n[3] - 0.25);
  pass = pass && x3_err <= 1e-10;
  report(5, pass, "oscillation certificate",
         "four properties " + std::string(cert.pass() ? "pass" : "FAIL") +
             "; |x(t_3) - 1/4| = " + fmt(x3_err));
}

void criterion_6_reparam_roundtrip() {
  const auto X = build_oscillator({1.0, 8, 512});
  const ReparamResult r = blowup_time(X, 8);
  bool pass = true;
  double worst_rt = 0.0;
  for (const double tau : {0.5, 1.7, 5.25}) {
    const double back = inverse_time_map(r, X, time_map(X, tau));
    worst_rt = std::max(worst_rt, std::abs(back - tau));
  }
  pass = pass && worst_rt <= 1e-8;

  double worst_fd = 0.0;
  const double horizon = r.table.values.back();
  const auto tau_of = [&](double t) { return inverse_time_map(r, X, t); };
  for (const double frac : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double t = frac * horizon;
    const double fd = oracles::central_diff(tau_of, t, 1e-6 * horizon);
    const double x = X.eval(tau_of(t));
    worst_fd = std::max(worst_fd, std::abs(fd / x - 1.0));
  }
  pass = pass && worst_fd <= 1e-6;
  report(6, pass, "reparameterization roundtrip",
         "max |tau(t(tau)) - tau| = " + fmt(worst_rt) +
             "; max FD dtau/dt vs x rel err = " + fmt(worst_fd));
}

void criterion_7_extremal_sharpness() {
  bool pass = true;
  const LogTrajectory traj = integrate_transformed(1.0, 3.0, 3 * 1024);
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.abscissae.size(); ++i) {
    const double ref = closed_form_logX(1.0, traj.abscissae[i]);
    worst = std::max(worst, std::abs(traj.log_values[i] - ref) /
                                std::max(1.0, std::abs(ref)));
  }
  pass = pass && worst <= 1e-6;

  const double r8 = blowup_ratio(1.0, 8.0);
  const double r12 = blowup_ratio(1.0, 12.0);
  pass = pass && r12 >= 0.9 && r12 <= 1.05;
  pass = pass && std::abs(r12 - 1.0) < std::abs(r8 - 1.0);
  report(7, pass, "extremal sharpness",
         "integrator vs closed form " + fmt(worst) +
             " on [0, 3]; |ratio(12) - 1| = " + fmt(std::abs(r12 - 1.0)) +
             " < |ratio(8) - 1| = " + fmt(std::abs(r8 - 1.0)));
}

void criterion_8_envelope_optimization() {
  bool pass = true;
  for (int k = 2; k <= 50; ++k) {
    pass = pass && chain_identity(k) == (2.0 * k + 5.0) / 5.0;
  }
  double worst_opt = 0.0;
  for (const double L : {20.0, 100.0, 1000.0, 10000.0}) {
    const double argmax = oracles::golden_max(
        [L](double p) { return objective_F(p, L); }, 4.0 + 1e-6,
        std::max(40.0, L), 1e-10 * std::max(40.0, L));
    worst_opt = std::max(worst_opt, std::abs(argmax / optimal_p(L) - 1.0));
  }
  pass = pass && worst_opt <= 1e-6;

  const ExponentParams e = exponents(1e4);
  const double alpha_dev = std::abs(e.alpha - 5.0 / 7.0) / (5.0 / 7.0);
  const double gamma_dev = std::abs(2.0 * (e.gamma - 1.0) - 5.0) / 5.0;
  pass = pass && alpha_dev <= 1e-3 && gamma_dev <= 1e-3;
  report(8, pass, "envelope optimization",
         "chain identity exact for k = 2..50; golden-section vs L/4 dev " +
             fmt(worst_opt) + "; exponent limit rel devs " + fmt(alpha_dev) +
             ", " + fmt(gamma_dev));
}

void criterion_9_cli_determinism() {
  const char* bin = std::getenv("BLOWUP_LAB_BIN");
  if (bin == nullptr) {
    report(9, false, "CLI determinism", "BLOWUP_LAB_BIN not set");
    return;
  }
  const fs::path dir = fs::temp_directory_path() / "blowup-lab-acceptance";
  fs::create_directories(dir);
  const auto slurp = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  const auto run = [&](const std::string& args) {
    const std::string cmd =
        std::string(bin) + " " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  bool pass = true;
  const std::vector<std::string> commands = {
      "construct --M 1 --n-max 8 --out OUT",
      "verify --M 1 --n-max 8 --out OUT",
      "extremal --tau-max 8 --out OUT",
      "envelope --L-min 2 --L-max 60 --k 2,5 --out OUT",
  };
  int checked = 0;
  for (const std::string& tmpl : commands) {
    const fs::path f1 = dir / "run1.csv";
    const fs::path f2 = dir / "run2.csv";
    std::string c1 = tmpl, c2 = tmpl;
    c1.replace(c1.find("OUT"), 3, f1.string());
    c2.replace(c2.find("OUT"), 3, f2.string());
    pass = pass && run(c1) == 0 && run(c2) == 0;
    pass = pass && !slurp(f1).empty() && slurp(f1) == slurp(f2);
    ++checked;
  }
  // report emits three artifacts per run.
  const std::string s1 = (dir / "rep1").string();
  const std::string s2 = (dir / "rep2").string();
  pass = pass &&
         run("report --M 1 --n-max 8 --t-points 32 --tau-max 8 --out " + s1) == 0;
  pass = pass &&
         run("report --M 1 --n-max 8 --t-points 32 --tau-max 8 --out " + s2) == 0;
  for (const std::string part :
       {".pushforward.csv", ".extremal.csv", ".envelope.csv"}) {
    pass = pass && !slurp(s1 + part).empty() &&
           slurp(s1 + part) == slurp(s2 + part);
    ++checked;
  }
  report(9, pass, "CLI determinism",
         "byte-identical artifacts across reruns of " +
             std::to_string(checked) + " command outputs");
}

}  // namespace

int main() {
  criterion_1_construction_fidelity();
  criterion_2_inequality_certificate();
  criterion_3_spline_shape();
  criterion_4_blowup_time();
  criterion_5_oscillation_certificate();
  criterion_6_reparam_roundtrip();
  criterion_7_extremal_sharpness();
  criterion_8_envelope_optimization();
  criterion_9_cli_determinism();
  if (failures == 0) {
    std::printf("acceptance: all 9 criteria pass\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) FAILED\n", failures);
  return 1;
}
