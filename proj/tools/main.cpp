// Command-line front end: simulate / bootstrap / potentials-check /
// energy-report.  Exit codes: 0 success, 1 validation failure, 2 numerical
// abort, 64 usage error.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "sqglc/io.hpp"
#include "sqglc/suites.hpp"

namespace fs = std::filesystem;
using namespace sqglc;

namespace {

int cmd_simulate(const std::string& config_path) {
  const RunConfig config = load_config(config_path);
  for (const auto& flag : config.params.flags()) {
    std::cerr << "note: " << flag << "\n";
  }

  fs::create_directories(config.output_directory);
  {
    std::ofstream echo(fs::path(config.output_directory) / "run_config.echo",
                       std::ios::binary);
    echo << "# " << kVersion << "\n" << config.echo();
  }

  auto [theta0, d0] = initial_conditions(config);

  RunOptions options;
  options.cadence = config.cadence;
  options.p_list = config.p_list;
  int64_t sample_count = 0;
  options.on_sample = [&](const SimState& state, const EnergySample&) {
    ++sample_count;
    if (config.snapshot_cadence > 0 &&
        sample_count % config.snapshot_cadence == 0) {
      char name[64];
      std::snprintf(name, sizeof(name), "state_%010lld.snap",
                    static_cast<long long>(state.step_index));
      write_snapshot(state, config.params,
                     (fs::path(config.output_directory) / name).string());
    }
  };

  auto result = run_simulation(config.params, std::move(theta0), std::move(d0),
                               options);

  char final_name[64];
  std::snprintf(final_name, sizeof(final_name), "state_%010lld.snap",
                static_cast<long long>(result.state.step_index));
  write_snapshot(result.state, config.params,
                 (fs::path(config.output_directory) / final_name).string());
  write_energy_csv(result.report, config.echo(),
                   (fs::path(config.output_directory) / "energy.csv").string());

  const auto& last = result.report.samples.back();
  std::cout << "t = " << last.t << "  E1 = " << last.e1 << "  E2 = " << last.e2
            << "  D = " << last.dissipation
            << "  max|theta| = " << last.max_theta
            << "  max|grad d| = " << last.max_grad_d << "\n";
  std::cout << "max projection defect = " << result.report.max_projection_defect
            << "\n";
  std::cout << "wrote " << config.output_directory << "/energy.csv\n";
  return 0;
}

int cmd_bootstrap(double a, double p0, double q0, double target,
                  int max_iters) {
  const auto result = bootstrap_iterate(p0, q0, a, max_iters, target);
  std::printf("p* = (2a+2)/(2a-1) = %.12g\n", result.p_star);
  for (size_t i = 0; i < result.trajectory.size(); ++i) {
    const auto& s = result.trajectory[i];
    std::printf("%3zu [%c]  p = %-18s q = %s\n", i, s.phase,
                s.p_infinite ? "inf" : std::to_string(s.p).c_str(),
                s.q_infinite ? "inf" : std::to_string(s.q).c_str());
  }
  if (result.diverged) {
    std::printf("verdict: diverged (both exponents exceed %.6g)\n", target);
  } else if (result.stalled) {
    std::printf("verdict: stalled below the thresholds (p0 > p*, q0 > 4 needed)\n");
  } else {
    std::printf("verdict: undecided within %d iterations\n", max_iters);
  }
  return 0;
}

int cmd_potentials(double a, const std::string& suite,
                   const std::string& out_dir) {
  std::vector<SuiteResult> results;
  auto append = [&](std::vector<SuiteResult> more) {
    for (auto& r : more) results.push_back(std::move(r));
  };
  if (suite == "kernel" || suite == "all") append(run_kernel_suite(a, out_dir));
  if (suite == "riesz" || suite == "all") append(run_riesz_suite(a, out_dir));
  if (suite == "poincare" || suite == "all")
    append(run_poincare_suite(a, out_dir));
  if (suite == "hedberg" || suite == "all")
    append(run_hedberg_suite(a, out_dir));
  if (results.empty()) {
    throw ValidationError("unknown suite '" + suite +
                          "' (kernel|riesz|poincare|hedberg|all)");
  }
  bool all_passed = true;
  for (const auto& r : results) {
    std::printf("[%s] %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    all_passed = all_passed && r.passed;
  }
  return all_passed ? 0 : 1;
}

int cmd_energy_report(const std::string& dir, const std::string& forcing,
                      const std::string& out_file) {
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".snap") paths.push_back(entry.path());
  }
  if (paths.empty()) {
    throw ValidationError("no .snap files under " + dir);
  }
  std::sort(paths.begin(), paths.end());

  EnergyReport report;
  ModelParams params;
  if (forcing == "f1") params.forcing = ForcingMode::F1;
  else if (forcing == "f2") params.forcing = ForcingMode::F2;
  else if (forcing == "none") params.forcing = ForcingMode::None;
  else throw ValidationError("forcing must be f1, f2 or none");

  bool first = true;
  for (const auto& path : paths) {
    const auto snap = read_snapshot(path.string());
    auto state = state_from_snapshot(snap, 0);
    if (first) {
      params.n = static_cast<int>(snap.n);
      params.a = snap.a;
      params.alpha = snap.alpha;
      first = false;
    } else if (static_cast<int>(snap.n) != params.n) {
      throw SizeMismatchError("snapshot grids differ across " + dir);
    }
    EnergySample sample;
    sample.t = state.t;
    const auto e = energies(state, params);
    sample.e1 = e.e1;
    sample.e2 = e.e2;
    sample.dissipation = e.dissipation;
    sample.balance_residual = balance_residual(state, params);
    sample.max_theta = state.theta.max_abs();
    sample.max_grad_d = max_grad_d(state.d);
    report.append(sample);
  }

  const std::string target =
      out_file.empty() ? (fs::path(dir) / "energy_report.csv").string()
                       : out_file;
  write_energy_csv(report, "recomputed offline from " + dir, target);
  std::cout << "wrote " << target << " (" << report.samples.size()
            << " snapshots)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-spectral solver for the coupled gSQG / harmonic-map "
               "system with energy-law and potential-theory diagnostics"};
  app.require_subcommand(1);

  std::string config_path;
  auto* simulate = app.add_subcommand("simulate", "run a configured simulation");
  simulate->add_option("config", config_path, "config file")->required();

  double a = 0.75, p0 = 8.0, q0 = 5.0, target = 100.0;
  int max_iters = 200;
  auto* bootstrap =
      app.add_subcommand("bootstrap", "iterate the integrability exponents");
  bootstrap->add_option("--a", a, "diffusion exponent")->required();
  bootstrap->add_option("--p0", p0, "initial theta exponent")->required();
  bootstrap->add_option("--q0", q0, "initial grad-d exponent")->required();
  bootstrap->add_option("--target", target, "divergence target");
  bootstrap->add_option("--max-iters", max_iters, "iteration cap");

  double pa = 0.75;
  std::string suite = "all", out_dir;
  auto* potentials =
      app.add_subcommand("potentials-check", "run the appendix property suites");
  potentials->add_option("--a", pa, "metric/kernel exponent")->required();
  potentials->add_option("--suite", suite, "kernel|riesz|poincare|hedberg|all");
  potentials->add_option("--out", out_dir, "directory for ratio CSVs");

  std::string snap_dir, report_forcing = "f1", report_out;
  auto* energy =
      app.add_subcommand("energy-report", "recompute energies from snapshots");
  energy->add_option("snapshot-dir", snap_dir, "directory of .snap files")
      ->required();
  energy->add_option("--forcing", report_forcing, "f1|f2|none");
  energy->add_option("--out", report_out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(config_path);
    if (bootstrap->parsed()) return cmd_bootstrap(a, p0, q0, target, max_iters);
    if (potentials->parsed()) return cmd_potentials(pa, suite, out_dir);
    if (energy->parsed())
      return cmd_energy_report(snap_dir, report_forcing, report_out);
  } catch (const NumericalError& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 64;
}
