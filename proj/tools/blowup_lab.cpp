// blowup-lab: construct, certify, and tabulate oscillating blow-up
// profiles for the Gronwall-type differential inequality
//   xdot <= x + x^2 exp(integral_0^t x),
// together with equality-case extremal diagnostics and lower-bound
// envelope tables.
//
// Exit codes: 0 pass, 1 certification failure, 2 invalid configuration,
// 3 numeric failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blowup/envelope.hpp"
#include "blowup/extremal.hpp"
#include "blowup/oscillator.hpp"
#include "blowup/reparam.hpp"
#include "blowup/verifier.hpp"
#include "table_io.hpp"

namespace {

using namespace blowup;
using blowup_lab::json;
using blowup_lab::Table;

struct OutputSpec {
  std::string path;    // empty = stdout
  std::string format = "csv";
};

void emit(const OutputSpec& out, const std::string& title,
          const json& manifest, const Table& table,
          const std::string& suffix = "") {
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out.path.empty()) {
    const std::string path = out.path + suffix;
    file.open(path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output file " + path);
    os = &file;
  }
  if (out.format == "json") {
    blowup_lab::write_json_doc(*os, manifest, table);
  } else {
    blowup_lab::write_csv(*os, title, manifest, table);
  }
}

// Per-segment sampling in the same traversal order as the segment-aligned
// residual grid, carrying analytic value and slope channels.
GridFunction sample_profile(const PiecewiseC1Function& X, int density) {
  GridFunction g;
  g.derivatives.emplace();
  const double amp = X.amplitude();
  for (const Segment& s : X.segments()) {
    const int k = std::max(
        2, static_cast<int>(std::ceil((s.right - s.left) * density)));
    for (int i = 0; i <= k; ++i) {
      const double tau =
          i == k ? s.right : s.left + (s.right - s.left) * i / k;
      g.abscissae.push_back(tau);
      g.values.push_back(amp * s.value(tau));
      g.derivatives->push_back(amp * s.slope(tau));
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// construct

struct ConstructArgs {
  double M = 1.0;
  int n_max = 8;
  int grid_density = 512;
  double audit_tol = 1e-10;
  OutputSpec out;
};

int run_construct(const ConstructArgs& a) {
  const PiecewiseC1Function X =
      build_oscillator({a.M, a.n_max, a.grid_density});
  const auto gaps = X.continuity_audit(a.audit_tol);

  json audit;
  audit["tol"] = a.audit_tol;
  audit["violations"] = gaps.size();
  double max_value_gap = 0.0, max_slope_gap = 0.0;
  for (const auto& g : gaps) {
    max_value_gap = std::max(max_value_gap, g.value_gap);
    max_slope_gap = std::max(max_slope_gap, g.slope_gap);
  }
  audit["max_value_gap"] = max_value_gap;
  audit["max_slope_gap"] = max_slope_gap;

  json manifest;
  manifest["command"] = "construct";
  manifest["M"] = a.M;
  manifest["n_max"] = a.n_max;
  manifest["segments"] = X.segments().size();
  manifest["domain_end"] = X.domain_end();
  manifest["x0"] = X.eval(0.0);
  manifest["audit"] = audit;

  if (!gaps.empty()) {
    json diag;
    diag["error"] = "continuity audit failed";
    diag["manifest"] = manifest;
    std::cout << diag.dump(2) << "\n";
    return 1;
  }

  Table t;
  t.columns = {"knot_index", "tau", "kind", "value", "slope", "a", "b"};
  const auto& segs = X.segments();
  const auto& knots = X.knots();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    std::vector<json> row;
    row.push_back(static_cast<long long>(i));
    row.push_back(knots[i]);
    row.push_back(segs[i].is_branch() ? "exp_branch" : "spline");
    row.push_back(X.eval(knots[i]));
    row.push_back(X.eval_derivative(knots[i]));
    if (segs[i].is_branch()) {
      row.push_back(nullptr);
      row.push_back(nullptr);
    } else {
      const auto& sp = std::get<SplineSegment>(segs[i].kind);
      row.push_back(sp.a);
      row.push_back(sp.b);
    }
    t.rows.push_back(std::move(row));
  }
  emit(a.out, "blowup-lab construct", manifest, t);
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  double M = 1.0;
  int n_max = 8;
  int grid_density = 512;
  std::string target = "oscillator";
  double slack = std::numeric_limits<double>::quiet_NaN();
  double tau_max = 3.0;
  int steps = 4096;
  double inject_defect = 0.0;
  OutputSpec out;
};

struct VerifyOutcome {
  ResidualReport report;
  GridFunction channels;  // tau, X, X'
  bool normalized = false;
};

VerifyOutcome verify_oscillator(const VerifyArgs& a, double slack) {
  const PiecewiseC1Function X =
      build_oscillator({a.M, a.n_max, a.grid_density});
  VerifyOutcome v;
  v.channels = sample_profile(X, a.grid_density);
  if (a.inject_defect == 0.0) {
    v.report = residual_transformed(X, a.grid_density, slack);
  } else {
    // Self-test fixture: spike one interior slope sample by a multiple of
    // the local right-hand side, so any magnitude > 1 must be flagged.
    const std::size_t j = v.channels.abscissae.size() / 2;
    (*v.channels.derivatives)[j] +=
        a.inject_defect *
        (1.0 + v.channels.values[j] * std::exp(v.channels.abscissae[j]));
    v.report = residual_transformed_sampled(v.channels, slack);
  }
  return v;
}

VerifyOutcome verify_extremal(const VerifyArgs& a, double slack) {
  if (a.tau_max > 5.5) {
    throw std::invalid_argument(
        "verify --target extremal: tau-max must be <= 5.5 so that X fits "
        "in double range");
  }
  const LogTrajectory traj = integrate_transformed(a.M, a.tau_max, a.steps);
  VerifyOutcome v;
  v.normalized = true;
  v.channels.derivatives.emplace();
  for (std::size_t i = 1; i + 1 < traj.abscissae.size(); ++i) {
    const double x = std::exp(traj.log_values[i]);
    const double h = traj.abscissae[i + 1] - traj.abscissae[i - 1];
    const double dlog = (traj.log_values[i + 1] - traj.log_values[i - 1]) / h;
    v.channels.abscissae.push_back(traj.abscissae[i]);
    v.channels.values.push_back(x);
    v.channels.derivatives->push_back(dlog * x);
  }
  if (a.inject_defect != 0.0) {
    const std::size_t j = v.channels.abscissae.size() / 2;
    (*v.channels.derivatives)[j] +=
        a.inject_defect *
        (1.0 + v.channels.values[j] * std::exp(v.channels.abscissae[j]));
  }
  v.report = residual_transformed_sampled(v.channels, slack, true);
  return v;
}

int run_verify(const VerifyArgs& a) {
  if (a.target != "oscillator" && a.target != "extremal") {
    throw std::invalid_argument("verify: unknown target " + a.target);
  }
  const bool extremal = (a.target == "extremal");
  const double slack = std::isnan(a.slack) ? (extremal ? 1e-6 : 0.0) : a.slack;
  const VerifyOutcome v =
      extremal ? verify_extremal(a, slack) : verify_oscillator(a, slack);

  json manifest;
  manifest["command"] = "verify";
  manifest["target"] = a.target;
  manifest["M"] = a.M;
  if (!extremal) manifest["n_max"] = a.n_max;
  manifest["normalized"] = v.normalized;
  manifest["slack"] = slack;
  manifest["points"] = v.report.grid.size();
  manifest["pass"] = v.report.pass;
  manifest["max_residual"] = v.report.max_residual;
  manifest["argmax"] = v.report.argmax;
  manifest["argmax_index"] = v.report.argmax_index;

  if (!a.out.path.empty()) {
    Table t;
    t.columns = {"tau", "X", "Xprime", "rhs", "residual"};
    for (std::size_t i = 0; i < v.report.grid.size(); ++i) {
      const double x = v.channels.values[i];
      const double xp = (*v.channels.derivatives)[i];
      t.rows.push_back({v.report.grid[i], x, xp,
                        1.0 + x * std::exp(v.report.grid[i]),
                        v.report.residuals[i]});
    }
    emit(a.out, "blowup-lab verify", manifest, t);
  }
  std::cout << manifest.dump(2) << "\n";
  return v.report.pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// extremal table

struct ExtremalArgs {
  double M = 1.0;
  double tau_max = 12.0;
  double grid_step = 0.25;
  int steps_per_unit = 256;
  OutputSpec out;
};

Table extremal_table(const ExtremalArgs& a, json& manifest) {
  const int steps =
      static_cast<int>(std::ceil(a.tau_max * a.steps_per_unit));
  const LogTrajectory traj = integrate_transformed(a.M, a.tau_max, steps);
  Table t;
  t.columns = {"tau", "logX_closed", "logX_rk4", "ratio"};
  const int rows = static_cast<int>(std::floor(a.tau_max / a.grid_step));
  for (int i = 0; i <= rows; ++i) {
    const double tau = std::min(i * a.grid_step, a.tau_max);
    const std::size_t node = static_cast<std::size_t>(
        std::lround(tau / a.tau_max * steps));
    std::vector<json> row;
    row.push_back(traj.abscissae[node]);
    row.push_back(closed_form_logX(a.M, traj.abscissae[node]));
    row.push_back(traj.log_values[node]);
    if (tau > 0.0) {
      row.push_back(blowup_ratio(a.M, traj.abscissae[node]));
    } else {
      row.push_back(nullptr);
    }
    t.rows.push_back(std::move(row));
  }
  manifest["M"] = a.M;
  manifest["tau_max"] = a.tau_max;
  manifest["steps"] = steps;
  manifest["log_K"] =
      closed_form_logX(a.M, a.tau_max) - std::exp(a.tau_max);
  return t;
}

int run_extremal(const ExtremalArgs& a) {
  json manifest;
  manifest["command"] = "extremal";
  const Table t = extremal_table(a, manifest);
  emit(a.out, "blowup-lab extremal", manifest, t);
  return 0;
}

// ---------------------------------------------------------------------------
// envelope table

struct EnvelopeArgs {
  double T_star = 1.0;
  double C = 1.0;
  double rho = 24.0 / 5.0;
  std::vector<int> k_list = {2, 3, 5};
  double L_min = 1.0;
  double L_max = 100.0;
  double L_step = 1.0;
  OutputSpec out;
};

Table envelope_table(const EnvelopeArgs& a, json& manifest) {
  if (!(a.L_min > 0.0) || !(a.L_max >= a.L_min) || !(a.L_step > 0.0)) {
    throw std::invalid_argument("envelope: need 0 < L-min <= L-max, L-step > 0");
  }
  for (const int k : a.k_list) {
    if (k < 2) throw std::invalid_argument("envelope: k values must be >= 2");
  }
  if (std::exp(-a.L_min) >= std::min(1.0, 1.0 / a.C)) {
    throw std::invalid_argument(
        "envelope: L-min too small for the validity window T_star - t < "
        "min(1, 1/C); increase L-min");
  }
  Table t;
  t.columns = {"t", "T_star_minus_t", "L", "envelope_first"};
  for (const int k : a.k_list) {
    t.columns.push_back("envelope_k" + std::to_string(k));
  }
  t.columns.push_back("optimal_p");
  EnvelopeParams ep{a.T_star, a.C, a.rho, 2};
  const int rows =
      static_cast<int>(std::floor((a.L_max - a.L_min) / a.L_step + 1e-9));
  for (int i = 0; i <= rows; ++i) {
    const double L = a.L_min + i * a.L_step;
    const double gap = std::exp(-L);
    std::vector<json> row;
    row.push_back(a.T_star - gap);  // may round to T_star for large L
    row.push_back(gap);
    row.push_back(L);
    row.push_back(envelope_first_at_gap(gap, ep));
    for (const int k : a.k_list) {
      EnvelopeParams epk{a.T_star, a.C, a.rho, k};
      row.push_back(envelope_higher_at_gap(gap, epk));
    }
    row.push_back(optimal_p(L));
    t.rows.push_back(std::move(row));
  }
  manifest["T_star"] = a.T_star;
  manifest["C"] = a.C;
  manifest["rho"] = a.rho;
  manifest["k"] = a.k_list;
  return t;
}

int run_envelope(const EnvelopeArgs& a) {
  json manifest;
  manifest["command"] = "envelope";
  const Table t = envelope_table(a, manifest);
  emit(a.out, "blowup-lab envelope", manifest, t);
  return 0;
}

// ---------------------------------------------------------------------------
// report: pushforward + extremal + envelope in one run

struct ReportArgs {
  double M = 1.0;
  int n_max = 8;
  int grid_density = 512;
  int t_points = 128;
  double tau_max = 12.0;
  int steps_per_unit = 256;
  std::vector<int> k_list = {2, 3, 5};
  double rho = 24.0 / 5.0;
  double C = 1.0;
  double L_min = 1.0;
  double L_max = 100.0;
  OutputSpec out;
};

int run_report(const ReportArgs& a) {
  if (a.out.path.empty()) {
    throw std::invalid_argument("report: --out is required (file stem)");
  }
  if (a.t_points < 2) {
    throw std::invalid_argument("report: t-points must be >= 2");
  }
  const std::string ext = "." + a.out.format;

  // (a) pushforward table (tau, t, x) with T_star in the header.
  const PiecewiseC1Function X =
      build_oscillator({a.M, a.n_max, a.grid_density});
  const ReparamResult r = blowup_time(X, a.n_max);
  {
    json manifest;
    manifest["command"] = "report.pushforward";
    manifest["M"] = a.M;
    manifest["n_max"] = a.n_max;
    manifest["T_star"] = r.T_star;
    manifest["T_star_error_bound"] = r.T_star_error_bound;
    manifest["T_star_times_M"] = r.T_star * a.M;
    manifest["horizon"] = r.table.values.back();
    std::vector<double> t_grid;
    const double horizon = r.table.values.back();
    for (int i = 0; i < a.t_points; ++i) {
      t_grid.push_back(horizon * i / a.t_points);
    }
    const GridFunction push = pushforward(r, X, t_grid);
    Table t;
    t.columns = {"tau", "t", "x"};
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      t.rows.push_back(
          {(*push.accumulation)[i], t_grid[i], push.values[i]});
    }
    emit(a.out, "blowup-lab report pushforward", manifest, t,
         ".pushforward" + ext);
  }

  // (b) extremal ratio table.
  {
    ExtremalArgs ea;
    ea.M = a.M;
    ea.tau_max = a.tau_max;
    ea.steps_per_unit = a.steps_per_unit;
    ea.out = a.out;
    json manifest;
    manifest["command"] = "report.extremal";
    const Table t = extremal_table(ea, manifest);
    emit(a.out, "blowup-lab report extremal", manifest, t,
         ".extremal" + ext);
  }

  // (c) envelope table anchored at the computed blow-up time.
  {
    EnvelopeArgs ev;
    ev.T_star = r.T_star;
    ev.C = a.C;
    ev.rho = a.rho;
    ev.k_list = a.k_list;
    ev.L_min = a.L_min;
    ev.L_max = a.L_max;
    ev.out = a.out;
    json manifest;
    manifest["command"] = "report.envelope";
    manifest["T_star_times_M"] = r.T_star * a.M;
    const Table t = envelope_table(ev, manifest);
    emit(a.out, "blowup-lab report envelope", manifest, t,
         ".envelope" + ext);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// plain `key = value` config files: fill in options absent from argv,
// so precedence is flags > config > defaults.

std::vector<std::string> merge_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    }
  }
  if (config_path.empty()) return args;

  std::ifstream file(config_path);
  if (!file) {
    throw std::invalid_argument("cannot read config file " + config_path);
  }
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  const auto present = [&args](const std::string& flag) {
    for (const auto& a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
  };
  std::string line;
  while (std::getline(file, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config") continue;
    const std::string flag = "--" + key;
    if (!present(flag)) {
      args.push_back(flag);
      args.push_back(value);
    }
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for oscillating blow-up profiles of "
               "the Gronwall-type inequality xdot <= x + x^2 exp(int x)"};
  app.require_subcommand(1);

  const auto add_output = [](CLI::App* cmd, OutputSpec& out) {
    cmd->add_option("--out", out.path, "output path (default: stdout)");
    cmd->add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--config", "plain key = value config file")
        ->expected(1);
  };

  ConstructArgs ca;
  CLI::App* construct =
      app.add_subcommand("construct", "build the oscillating profile and "
                                      "write its knot/segment table");
  construct->add_option("--M", ca.M, "initial value x(0)")
      ->capture_default_str();
  construct->add_option("--n-max", ca.n_max, "construction depth")
      ->capture_default_str();
  construct->add_option("--grid-density", ca.grid_density,
                        "certification points per unit tau")
      ->capture_default_str();
  construct->add_option("--audit-tol", ca.audit_tol,
                        "continuity audit tolerance")
      ->capture_default_str();
  add_output(construct, ca.out);

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand(
      "verify", "certify the pointwise residual of the inequality");
  verify->add_option("--M", va.M, "initial value")->capture_default_str();
  verify->add_option("--n-max", va.n_max, "construction depth")
      ->capture_default_str();
  verify->add_option("--grid-density", va.grid_density,
                     "residual grid points per unit tau")
      ->capture_default_str();
  verify->add_option("--target", va.target, "oscillator | extremal")
      ->check(CLI::IsMember({"oscillator", "extremal"}))
      ->capture_default_str();
  verify->add_option("--slack", va.slack,
                     "pass threshold (default 0; 1e-6 for extremal)");
  verify->add_option("--tau-max", va.tau_max,
                     "extremal target: integration horizon")
      ->capture_default_str();
  verify->add_option("--steps", va.steps, "extremal target: RK4 steps")
      ->capture_default_str();
  verify->add_option("--inject-defect", va.inject_defect,
                     "self-test fixture: spike one slope sample by this "
                     "multiple of the local right-hand side");
  add_output(verify, va.out);

  ExtremalArgs ea;
  CLI::App* extremal = app.add_subcommand(
      "extremal", "closed form vs integrator table with blow-up ratio");
  extremal->add_option("--M", ea.M, "initial value")->capture_default_str();
  extremal->add_option("--tau-max", ea.tau_max, "table horizon")
      ->capture_default_str();
  extremal->add_option("--grid-step", ea.grid_step, "row spacing in tau")
      ->capture_default_str();
  extremal->add_option("--steps-per-unit", ea.steps_per_unit,
                       "RK4 steps per unit tau")
      ->capture_default_str();
  add_output(extremal, ea.out);

  EnvelopeArgs va2;
  CLI::App* envelope = app.add_subcommand(
      "envelope", "lower-bound envelope table over a log-spaced gap grid");
  envelope->add_option("--T-star", va2.T_star, "blow-up time")
      ->capture_default_str();
  envelope->add_option("--C", va2.C, "envelope constant")
      ->capture_default_str();
  envelope->add_option("--rho", va2.rho, "log-correction power")
      ->capture_default_str();
  envelope->add_option("--k", va2.k_list, "derivative orders (k >= 2)")
      ->delimiter(',')
      ->capture_default_str();
  envelope->add_option("--L-min", va2.L_min, "smallest L = log(1/(T*-t))")
      ->capture_default_str();
  envelope->add_option("--L-max", va2.L_max, "largest L")
      ->capture_default_str();
  envelope->add_option("--L-step", va2.L_step, "L increment")
      ->capture_default_str();
  add_output(envelope, va2.out);

  ReportArgs ra;
  CLI::App* report = app.add_subcommand(
      "report", "pushforward + extremal + envelope tables in one run");
  report->add_option("--M", ra.M, "initial value")->capture_default_str();
  report->add_option("--n-max", ra.n_max, "construction depth")
      ->capture_default_str();
  report->add_option("--grid-density", ra.grid_density,
                     "certification points per unit tau")
      ->capture_default_str();
  report->add_option("--t-points", ra.t_points, "pushforward table rows")
      ->capture_default_str();
  report->add_option("--tau-max", ra.tau_max, "extremal table horizon")
      ->capture_default_str();
  report->add_option("--steps-per-unit", ra.steps_per_unit,
                     "extremal RK4 steps per unit tau")
      ->capture_default_str();
  report->add_option("--k", ra.k_list, "envelope derivative orders")
      ->delimiter(',')
      ->capture_default_str();
  report->add_option("--rho", ra.rho, "envelope log-correction power")
      ->capture_default_str();
  report->add_option("--C", ra.C, "envelope constant")
      ->capture_default_str();
  report->add_option("--L-min", ra.L_min, "envelope smallest L")
      ->capture_default_str();
  report->add_option("--L-max", ra.L_max, "envelope largest L")
      ->capture_default_str();
  report->add_option("--out", ra.out.path, "output stem (required)");
  report->add_option("--format", ra.out.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  report->add_option("--config", "plain key = value config file")->expected(1);

  try {
    const std::vector<std::string> merged = merge_config(argc, argv);
    // CLI11 parses a reversed vector of already-split arguments.
    std::vector<std::string> reversed(merged.rbegin(), merged.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*construct) return run_construct(ca);
    if (*verify) return run_verify(va);
    if (*extremal) return run_extremal(ea);
    if (*envelope) return run_envelope(va2);
    if (*report) return run_report(ra);
  } catch (const std::invalid_argument& e) {
    json diag;
    diag["error"] = e.what();
    std::cout << diag.dump(2) << "\n";
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    json diag;
    diag["error"] = e.what();
    std::cout << diag.dump(2) << "\n";
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    json diag;
    diag["error"] = e.what();
    std::cout << diag.dump(2) << "\n";
    std::cerr << "range error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    json diag;
    diag["error"] = e.what();
    std::cout << diag.dump(2) << "\n";
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
