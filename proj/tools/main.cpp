// Command-line front end: generate synthetic systems, ingest LIBSVM data,
// run single RK traces, evaluate bound curves, run full Monte Carlo
// experiments, report limiting balls, and run the verification suite.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rkhorizon/bounds.hpp"
#include "rkhorizon/errors.hpp"
#include "rkhorizon/generators.hpp"
#include "rkhorizon/harness.hpp"
#include "rkhorizon/ingest.hpp"
#include "rkhorizon/solver.hpp"
#include "rkhorizon/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rkhorizon;

namespace {

struct SyntheticFlags {
  std::size_t m = 0, n = 0, rank = 0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  bool homogeneous = false;
};

void add_synthetic_flags(CLI::App* cmd, SyntheticFlags& flags) {
  cmd->add_option("--m", flags.m, "rows of the synthetic matrix");
  cmd->add_option("--n", flags.n, "columns of the synthetic matrix");
  cmd->add_option("--rank", flags.rank, "rank of the synthetic matrix");
  cmd->add_option("--beta", flags.beta,
                  "norm of the rhs component off the column space");
  cmd->add_option("--seed", flags.seed, "generator seed");
  cmd->add_flag("--homogeneous", flags.homogeneous, "use b = 0");
}

SystemSource source_from_flags(const SyntheticFlags& flags) {
  SystemSource source;
  source.kind =
      flags.homogeneous ? SystemKind::homogeneous : SystemKind::synthetic;
  source.synthetic = {flags.m, flags.n, flags.rank, flags.beta, flags.seed};
  return source;
}

// Either --system <dir> (written by `generate`) or synthetic flags.
BuiltSystem load_or_build(const std::string& system_path,
                          const SyntheticFlags& flags) {
  if (!system_path.empty()) {
    LoadedSystem loaded = read_system_dir(system_path);
    json prov = loaded.header.value("provenance", json::object());
    return {LinearSystem(std::move(loaded.a), std::move(loaded.b)),
            std::move(prov)};
  }
  if (flags.m == 0 || flags.n == 0 || flags.rank == 0) {
    throw CLI::ValidationError(
        "system", "give either --system <dir> or --m/--n/--rank");
  }
  return build_system(source_from_flags(flags));
}

ExperimentConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config " + path);
  }
  json j;
  in >> j;
  return config_from_json(j);
}

int cmd_generate(const SyntheticFlags& flags, const std::string& out_dir) {
  SystemSource source = source_from_flags(flags);
  BuiltSystem built = build_system(source);
  write_system_dir(out_dir, built.sys.matrix(), built.sys.rhs(),
                   built.provenance);
  std::cout << "wrote " << (fs::path(out_dir) / "system.json").string()
            << " (" << built.sys.rows() << " x " << built.sys.cols() << ")\n";
  return 0;
}

int cmd_ingest(const std::string& data_path, std::size_t dim,
               std::size_t max_rows, const std::string& json_out) {
  ParseOptions opts;
  if (dim > 0) opts.expected_dim = dim;
  if (max_rows > 0) opts.max_rows = max_rows;
  const Dataset ds = parse_libsvm(data_path, opts);
  const DatasetSummary summary = summarize(ds);
  std::cout << format_summary(ds, summary);
  if (!json_out.empty()) {
    json j = {{"name", ds.name},
              {"source", ds.source_path},
              {"rows", summary.rows},
              {"cols", summary.cols},
              {"rank", summary.rank},
              {"sigma_min", summary.sigma_min},
              {"frobenius_norm", summary.frob_norm},
              {"contraction_ratio", summary.contraction_ratio},
              {"ls_residual", summary.ls_residual},
              {"smallest_ball_radius", summary.smallest_ball_radius}};
    std::ofstream out(json_out);
    if (!out) throw WriteFailure("cannot open " + json_out);
    out << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_solve(const std::string& system_path, const SyntheticFlags& flags,
              std::size_t iters, std::uint64_t run_seed, bool x0_zero,
              bool log_rows, const std::string& out_path) {
  BuiltSystem built = load_or_build(system_path, flags);
  const LinearSystem& sys = built.sys;

  RkRunConfig rc;
  rc.seed = run_seed;
  rc.max_iters = iters;
  rc.checkpoints = default_checkpoints(iters);
  rc.log_selected_rows = log_rows;
  if (x0_zero) {
    rc.x0 = Vector(sys.cols());
  } else {
    RngState rng(derive_stream_seed(run_seed, 1));
    rc.x0 = gaussian_vector(sys.cols(), rng);
  }
  const IterateTrace trace = run_rk(sys, rc);

  std::string csv = "iteration";
  for (std::size_t j = 0; j < sys.cols(); ++j) {
    csv += ",x" + std::to_string(j);
  }
  csv += '\n';
  for (std::size_t c = 0; c < trace.checkpoints.size(); ++c) {
    csv += std::to_string(trace.checkpoints[c]);
    for (std::size_t j = 0; j < sys.cols(); ++j) {
      csv += ',';
      csv += format_double(trace.iterates[c][j]);
    }
    csv += '\n';
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw WriteFailure("cannot open " + out_path);
  out << csv;

  if (log_rows) {
    const std::string rows_path = out_path + ".rows";
    std::ofstream rows_out(rows_path, std::ios::binary);
    if (!rows_out) throw WriteFailure("cannot open " + rows_path);
    rows_out << "iteration,row\n";
    for (std::size_t k = 0; k < trace.selected_rows.size(); ++k) {
      rows_out << k << ',' << trace.selected_rows[k] << '\n';
    }
  }

  const Vector& final_x = trace.iterates.back();
  const Vector residual = multiply(sys.matrix(), final_x) - sys.rhs();
  std::cout << "final residual norm: " << format_double(norm(residual))
            << "\nwrote " << out_path << "\n";
  return 0;
}

int cmd_bounds(const std::string& system_path, const SyntheticFlags& flags,
               std::size_t iters, std::uint64_t base_seed,
               const std::string& reference, std::size_t sv_index,
               const std::string& out_path) {
  BuiltSystem built = load_or_build(system_path, flags);
  const LinearSystem& sys = built.sys;

  ReferenceMode mode = ReferenceMode::random;
  if (reference == "lstsq") mode = ReferenceMode::lstsq;
  else if (reference == "singular_vector") mode = ReferenceMode::singular_vector;
  else if (reference != "random") {
    throw CLI::ValidationError("--reference", "unknown mode " + reference);
  }
  const ReferencePoints pts = gen_reference_points(
      sys.cols(), mode, sv_index, sys, derive_stream_seed(base_seed, 1));
  const ReferenceFrame frame = make_frame(sys, pts.x0, pts.x_star);

  const auto cps = default_checkpoints(iters);
  const BoundCurve mse = mse_bound_curve(sys, frame, cps);
  const BoundCurve mean = mean_bound_curve(sys, frame, cps);

  std::string csv = "iteration,series,value,stderr,run_count\n";
  for (std::size_t c = 0; c < cps.size(); ++c) {
    csv += std::to_string(cps[c]) + ",mse_bound," +
           format_double(mse.values[c]) + ",,\n";
    csv += std::to_string(cps[c]) + ",sqrt_mse_bound," +
           format_double(std::sqrt(mse.values[c])) + ",,\n";
    csv += std::to_string(cps[c]) + ",mean_bound," +
           format_double(mean.values[c]) + ",,\n";
    csv += std::to_string(cps[c]) + ",mse_horizon," +
           format_double(mse.horizon) + ",,\n";
    csv += std::to_string(cps[c]) + ",mean_horizon," +
           format_double(mean.horizon) + ",,\n";
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw WriteFailure("cannot open " + out_path);
  out << csv;
  std::cout << "mse horizon: " << format_double(mse.horizon)
            << "\nmean horizon: " << format_double(mean.horizon) << "\nwrote "
            << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "randomized Kaczmarz on noisy inconsistent systems: solver runs, "
      "convergence bounds, and limiting-ball reports"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand(
      "generate", "write a synthetic system to a directory");
  SyntheticFlags gen_flags;
  add_synthetic_flags(generate, gen_flags);
  std::string gen_out = "system";
  generate->add_option("--out", gen_out, "output directory");

  // ingest
  auto* ingest =
      app.add_subcommand("ingest", "summarize a LIBSVM-format dataset");
  std::string ingest_path;
  ingest->add_option("--data", ingest_path, "dataset file")->required();
  std::size_t ingest_dim = 0;
  ingest->add_option("--dim", ingest_dim, "force a feature dimension");
  std::size_t ingest_max_rows = 0;
  ingest->add_option("--max-rows", ingest_max_rows, "parse at most this many rows");
  std::string ingest_json;
  ingest->add_option("--json", ingest_json, "also write a JSON summary");

  // solve
  auto* solve = app.add_subcommand("solve", "single RK run, trace to CSV");
  SyntheticFlags solve_flags;
  add_synthetic_flags(solve, solve_flags);
  std::string solve_system;
  solve->add_option("--system", solve_system, "system directory from `generate`");
  std::size_t solve_iters = 1000;
  solve->add_option("--iters", solve_iters, "iteration count");
  std::uint64_t solve_seed = 0;
  solve->add_option("--run-seed", solve_seed, "seed for the run");
  bool solve_x0_zero = false;
  solve->add_flag("--x0-zero", solve_x0_zero, "start from the origin");
  bool solve_log_rows = false;
  solve->add_flag("--log-rows", solve_log_rows, "also dump selected rows");
  std::string solve_out = "trace.csv";
  solve->add_option("--out", solve_out, "trace CSV path");

  // bounds
  auto* bounds_cmd =
      app.add_subcommand("bounds", "evaluate bound curves for a system/frame");
  SyntheticFlags bounds_flags;
  add_synthetic_flags(bounds_cmd, bounds_flags);
  std::string bounds_system;
  bounds_cmd->add_option("--system", bounds_system, "system directory");
  std::size_t bounds_iters = 1000;
  bounds_cmd->add_option("--iters", bounds_iters, "iteration range");
  std::uint64_t bounds_seed = 0;
  bounds_cmd->add_option("--base-seed", bounds_seed, "seed for frame points");
  std::string bounds_reference = "random";
  bounds_cmd->add_option("--reference", bounds_reference,
                         "random | lstsq | singular_vector");
  std::size_t bounds_sv = 1;
  bounds_cmd->add_option("--sv-index", bounds_sv,
                         "singular vector index (1-based)");
  std::string bounds_out = "bounds.csv";
  bounds_cmd->add_option("--out", bounds_out, "curve CSV path");

  // experiment
  auto* experiment = app.add_subcommand(
      "experiment", "full Monte Carlo + bounds run from a JSON config");
  std::string exp_config;
  experiment->add_option("--config", exp_config, "JSON config file");
  SyntheticFlags exp_flags;
  add_synthetic_flags(experiment, exp_flags);
  std::size_t exp_runs = 20;
  experiment->add_option("--runs", exp_runs, "Monte Carlo replicates");
  std::size_t exp_iters = 1000;
  experiment->add_option("--iters", exp_iters, "iterations per run");
  std::uint64_t exp_base_seed = 0;
  experiment->add_option("--base-seed", exp_base_seed,
                         "run i uses seed base+i");
  std::vector<std::size_t> exp_track;
  experiment->add_option("--track", exp_track,
                         "singular indices to trace (1-based)");
  std::string exp_out;
  experiment->add_option("--out", exp_out, "output directory");

  // balls
  auto* balls = app.add_subcommand(
      "balls", "limiting-ball radii for sampled reference points");
  std::string balls_config;
  balls->add_option("--config", balls_config, "JSON config file");
  SyntheticFlags balls_flags;
  add_synthetic_flags(balls, balls_flags);
  std::uint64_t balls_seed = 0;
  balls->add_option("--base-seed", balls_seed, "seed for sampling");
  std::size_t balls_samples = 100;
  balls->add_option("--samples", balls_samples, "random reference points");
  std::string balls_out;
  balls->add_option("--out", balls_out, "also write a JSON report");

  // verify
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  std::string verify_level = "fast";
  verify->add_option("--level", verify_level, "fast | full");
  std::string verify_data;
  verify->add_option("--data-dir", verify_data,
                     "directory with LIBSVM datasets (full level)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      return cmd_generate(gen_flags, gen_out);
    }
    if (ingest->parsed()) {
      return cmd_ingest(ingest_path, ingest_dim, ingest_max_rows, ingest_json);
    }
    if (solve->parsed()) {
      return cmd_solve(solve_system, solve_flags, solve_iters, solve_seed,
                       solve_x0_zero, solve_log_rows, solve_out);
    }
    if (bounds_cmd->parsed()) {
      return cmd_bounds(bounds_system, bounds_flags, bounds_iters, bounds_seed,
                        bounds_reference, bounds_sv, bounds_out);
    }
    if (experiment->parsed()) {
      ExperimentConfig cfg;
      if (!exp_config.empty()) {
        cfg = config_from_file(exp_config);
      } else {
        cfg.system = source_from_flags(exp_flags);
        cfg.runs = exp_runs;
        cfg.max_iters = exp_iters;
        cfg.base_seed = exp_base_seed;
        cfg.track_singular_indices = exp_track;
      }
      if (!exp_out.empty()) cfg.output_dir = exp_out;
      const ExperimentResult result = run_experiment(cfg);
      std::cout << "checkpoints: " << result.checkpoints.size()
                << "\nmse horizon: " << format_double(result.mse_bound.horizon)
                << "\nmean horizon: "
                << format_double(result.mean_bound.horizon)
                << "\nsmallest ball radius: "
                << format_double(result.minimal_ball.radius) << "\n";
      if (!cfg.output_dir.empty()) {
        std::cout << "wrote " << cfg.output_dir << "/experiment.csv and .json\n";
      }
      return 0;
    }
    if (balls->parsed()) {
      ExperimentConfig cfg;
      if (!balls_config.empty()) {
        cfg = config_from_file(balls_config);
      } else {
        cfg.system = source_from_flags(balls_flags);
        cfg.base_seed = balls_seed;
      }
      const BallReport report = ball_report(cfg, balls_samples);
      std::cout << render_ball_report(report);
      if (!balls_out.empty()) {
        std::ofstream out(balls_out);
        if (!out) throw WriteFailure("cannot open " + balls_out);
        out << ball_report_to_json(report).dump(2) << "\n";
      }
      return report.minimum_attained ? 0 : 1;
    }
    if (verify->parsed()) {
      VerifyLevel level = VerifyLevel::fast;
      if (verify_level == "full") level = VerifyLevel::full;
      else if (verify_level != "fast") {
        throw CLI::ValidationError("--level", "expected fast or full");
      }
      VerifyHooks hooks;
      hooks.libsvm_dir = verify_data;
      return report_checks(verify_suite(level, hooks), std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
