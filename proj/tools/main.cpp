#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mems/branch.hpp"
#include "mems/dynamics.hpp"
#include "mems/pull_in.hpp"
#include "mems/serialize.hpp"
#include "mems/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // solver or I/O failure
constexpr int kExitUsage = 2;    // invalid flags / parameters

// Output sink: a file path or "-" for standard output.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) {
        throw std::runtime_error("cannot open output file: " + path);
      }
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << "\nsee 'mems-pullin --help'\n";
  return kExitUsage;
}

struct PullinOpts {
  double alpha = 0.0;
  std::vector<double> alpha_list;
  double tol = 1e-12;
  std::string out = "-";
  std::string format = "csv";
};

int run_pullin(const PullinOpts& opts) {
  const bool sweep = !opts.alpha_list.empty();
  std::vector<double> alphas = sweep ? opts.alpha_list : std::vector<double>{opts.alpha};
  for (double a : alphas) {
    if (!(a >= 0.0)) return usage_error("alpha must be >= 0");
  }

  std::vector<mems::PullInSolution> sols;
  sols.reserve(alphas.size());
  for (double a : alphas) {
    sols.push_back(mems::find_pull_in(a, opts.tol));
  }

  Sink sink(opts.out);
  if (opts.format == "json") {
    if (sweep) {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& sol : sols) arr.push_back(mems::pullin_json(sol));
      sink.stream() << arr.dump(2) << '\n';
    } else {
      sink.stream() << mems::pullin_json(sols.front()).dump(2) << '\n';
    }
  } else {
    mems::write_pullin_csv(sink.stream(), sols);
  }
  return kExitOk;
}

struct DiagramOpts {
  double alpha = 0.0;
  double t_min = 0.001;
  double t_max = 0.999;
  int n = 1000;
  std::string out = "-";
  std::string format = "csv";
};

int run_diagram(const DiagramOpts& opts) {
  if (!(0.0 < opts.t_min && opts.t_min < opts.t_max && opts.t_max < 1.0)) {
    return usage_error("require 0 < t-min < t-max < 1");
  }
  if (opts.n < 2) return usage_error("n must be >= 2");

  const mems::DiagramTable table =
      mems::diagram_sweep(opts.alpha, opts.t_min, opts.t_max, opts.n);
  Sink sink(opts.out);
  if (opts.format == "json") {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json r;
      r["t"] = row.t;
      r["s"] = row.s;
      r["a"] = row.a;
      r["b"] = row.b;
      r["sigma"] = row.sigma;
      r["lambda"] = row.lambda;
      rows.push_back(std::move(r));
    }
    nlohmann::ordered_json j;
    j["alpha"] = table.alpha;
    j["rows"] = std::move(rows);
    sink.stream() << j.dump(2) << '\n';
  } else {
    mems::write_diagram_csv(sink.stream(), table);
  }
  return kExitOk;
}

struct SolveOpts {
  double lambda = 0.0;
  double alpha = 0.0;
  double tol = 1e-12;
  int n = 1001;
  std::string out = "-";
};

int run_solve(const SolveOpts& opts) {
  if (!(opts.lambda > 0.0)) return usage_error("lambda must be > 0");
  if (opts.n < 3 || opts.n % 2 == 0) return usage_error("n must be odd and >= 3");

  const mems::SolveResult result =
      mems::solve_at_lambda(opts.lambda, opts.alpha, opts.tol);
  std::vector<mems::SteadyProfile> profiles;
  profiles.reserve(result.roots.size());
  for (const mems::ShootingCoord& root : result.roots) {
    profiles.push_back(mems::reconstruct_profile(
        mems::branch_point(root.value(), opts.alpha), opts.n));
  }
  Sink sink(opts.out);
  sink.stream() << mems::solve_json(result, profiles).dump(2) << '\n';
  return kExitOk;
}

struct SimulateOpts {
  double lambda = 0.0;
  double alpha = 0.0;
  int nx = 401;
  double t_end = 100.0;
  double snap_dt = 0.1;
  std::string out = "-";
  std::string summary = "-";
};

int run_simulate(const SimulateOpts& opts) {
  if (!(opts.lambda > 0.0)) return usage_error("lambda must be > 0");
  if (opts.nx < 51 || opts.nx % 2 == 0) return usage_error("nx must be odd and >= 51");
  if (!(opts.t_end > 0.0)) return usage_error("t-end must be > 0");
  if (!(opts.snap_dt > 0.0)) return usage_error("snap-dt must be > 0");

  Sink series(opts.out);
  series.stream() << mems::kSimSeriesHeader << '\n';

  mems::dynamics::SimParams params;
  params.nx = opts.nx;
  params.t_end = opts.t_end;
  params.snapshot_dt = opts.snap_dt;
  const mems::dynamics::SimOutcome outcome = mems::dynamics::simulate(
      opts.lambda, opts.alpha, params, nullptr,
      [&](const mems::dynamics::SimState& state) {
        series.stream() << mems::sim_series_row(state) << '\n';
      });

  Sink summary(opts.summary);
  summary.stream() << mems::sim_summary_json(outcome).dump(2) << '\n';
  return kExitOk;
}

struct VerifyOpts {
  bool json = false;
  bool skip_dynamics = false;
  double log_term_bias = 0.0;
};

int run_verify(const VerifyOpts& opts) {
  mems::verify::Options vopts;
  vopts.log_term_bias = opts.log_term_bias;
  vopts.include_dynamics = !opts.skip_dynamics;
  const std::vector<mems::verify::CheckResult> results = mems::verify::run_all(vopts);
  if (opts.json) {
    std::cout << mems::verify_json(results).dump(2) << '\n';
  } else {
    for (const auto& r : results) {
      std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name;
      if (!r.detail.empty()) std::cout << " -- " << r.detail;
      std::cout << '\n';
    }
  }
  return mems::verify::all_passed(results) ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bifurcation diagram and pull-in analysis of the nonlocal MEMS "
               "steady problem with Robin boundary conditions",
               "mems-pullin"};
  app.require_subcommand(1);

  PullinOpts pullin;
  CLI::App* cmd_pullin =
      app.add_subcommand("pullin", "Compute the pull-in voltage lambda*(alpha)");
  cmd_pullin->add_option("--alpha", pullin.alpha, "Capacitance ratio (>= 0)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd_pullin
      ->add_option("--alpha-list", pullin.alpha_list,
                   "Comma-separated alpha sweep (overrides --alpha)")
      ->delimiter(',');
  cmd_pullin->add_option("--tol", pullin.tol, "Relative bracket tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_pullin->add_option("--out", pullin.out, "Output path, '-' for stdout")
      ->capture_default_str();
  cmd_pullin->add_option("--format", pullin.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  DiagramOpts diagram;
  CLI::App* cmd_diagram =
      app.add_subcommand("diagram", "Sweep the branch over t = 1/s for plotting");
  cmd_diagram->add_option("--alpha", diagram.alpha, "Capacitance ratio (>= 0)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd_diagram->add_option("--t-min", diagram.t_min, "Lower end of the t range")
      ->capture_default_str();
  cmd_diagram->add_option("--t-max", diagram.t_max, "Upper end of the t range")
      ->capture_default_str();
  cmd_diagram->add_option("--n", diagram.n, "Number of rows (>= 2)")
      ->capture_default_str();
  cmd_diagram->add_option("--out", diagram.out, "Output path, '-' for stdout")
      ->capture_default_str();
  cmd_diagram->add_option("--format", diagram.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  SolveOpts solve;
  CLI::App* cmd_solve = app.add_subcommand(
      "solve", "Find all steady states at a given lambda and emit profiles (JSON)");
  cmd_solve->add_option("--lambda", solve.lambda, "Applied-voltage parameter (> 0)")
      ->required();
  cmd_solve->add_option("--alpha", solve.alpha, "Capacitance ratio (>= 0)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd_solve->add_option("--tol", solve.tol, "Relative root tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_solve->add_option("--n", solve.n, "Profile grid size (odd)")
      ->capture_default_str();
  cmd_solve->add_option("--out", solve.out, "Output path, '-' for stdout")
      ->capture_default_str();

  SimulateOpts simulate;
  CLI::App* cmd_simulate = app.add_subcommand(
      "simulate", "Time-step the evolution problem and classify the outcome");
  cmd_simulate
      ->add_option("--lambda", simulate.lambda, "Applied-voltage parameter (> 0)")
      ->required();
  cmd_simulate->add_option("--alpha", simulate.alpha, "Capacitance ratio (>= 0)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd_simulate->add_option("--nx", simulate.nx, "Grid nodes (odd, >= 51)")
      ->capture_default_str();
  cmd_simulate->add_option("--t-end", simulate.t_end, "Time horizon")
      ->capture_default_str();
  cmd_simulate->add_option("--snap-dt", simulate.snap_dt, "Series snapshot interval")
      ->capture_default_str();
  cmd_simulate->add_option("--out", simulate.out, "Series CSV path, '-' for stdout")
      ->capture_default_str();
  cmd_simulate->add_option("--summary", simulate.summary,
                           "Summary JSON path, '-' for stdout")
      ->capture_default_str();

  VerifyOpts verify;
  CLI::App* cmd_verify = app.add_subcommand(
      "verify", "Run the full cross-validation battery; exit 0 iff all checks pass");
  cmd_verify->add_flag("--json", verify.json, "Machine-readable results");
  cmd_verify->add_flag("--skip-dynamics", verify.skip_dynamics,
                       "Skip the multi-second dynamics checks");
  cmd_verify
      ->add_option("--inject-log-term-bias", verify.log_term_bias,
                   "Testing hook: bias the log factor inside the shooting check")
      ->group("Testing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_pullin->parsed()) return run_pullin(pullin);
    if (cmd_diagram->parsed()) return run_diagram(diagram);
    if (cmd_solve->parsed()) return run_solve(solve);
    if (cmd_simulate->parsed()) return run_simulate(simulate);
    if (cmd_verify->parsed()) return run_verify(verify);
  } catch (const std::domain_error& e) {
    return usage_error(e.what());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
