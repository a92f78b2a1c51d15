#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rkhorizon/bounds.hpp"
#include "rkhorizon/generators.hpp"
#include "rkhorizon/ingest.hpp"
#include "rkhorizon/linalg.hpp"
#include "rkhorizon/solver.hpp"

namespace rkhorizon {

enum class X0Mode { random, zero, in_row_space };
enum class SystemKind { synthetic, libsvm, homogeneous };

/// Where the system comes from. homogeneous reuses the synthetic matrix
/// parameters with b = 0.
struct SystemSource {
  SystemKind kind = SystemKind::synthetic;
  SyntheticSpec synthetic;
  std::string libsvm_path;
  std::optional<std::size_t> libsvm_dim;
  std::optional<std::size_t> libsvm_max_rows;
};

struct CheckpointPolicy {
  bool use_default = true;
  std::vector<std::size_t> explicit_values;
};

struct ExperimentConfig {
  SystemSource system;
  ReferenceMode reference_mode = ReferenceMode::random;
  std::size_t singular_index = 0;  // for reference_mode == singular_vector
  X0Mode x0_mode = X0Mode::random;
  std::size_t runs = 20;
  std::size_t max_iters = 1000;
  CheckpointPolicy checkpoints;
  std::uint64_t base_seed = 0;
  std::vector<std::size_t> track_singular_indices;
  std::string output_dir;  // empty: keep results in memory only
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

/// Deterministic auxiliary stream derivation (SplitMix64 mix); run seeds
/// stay at base_seed + run_index, auxiliary draws (reference points) use
/// a separate stream so they never collide with run seeds.
std::uint64_t derive_stream_seed(std::uint64_t base, std::uint64_t stream);

/// System plus the artifacts of building it, shared by the subcommands.
struct BuiltSystem {
  LinearSystem sys;
  nlohmann::json provenance;
};

BuiltSystem build_system(const SystemSource& source);

/// Closed-form and empirical singular-coefficient traces for one index j.
struct CoefficientTrace {
  std::size_t j = 0;
  std::vector<double> empirical_mean;
  std::vector<double> empirical_stderr;
  std::vector<double> closed_form;  // expected_singular_coefficient
  std::vector<double> recursion;    // exact_mean_iterate projection
};

struct ExperimentResult {
  std::vector<std::size_t> checkpoints;
  EmpiricalErrors errors;
  BoundCurve mse_bound;
  BoundCurve mean_bound;
  std::vector<CoefficientTrace> coefficients;
  BallEstimate reference_ball;
  BallEstimate minimal_ball;
  std::string csv;         // long-form table, byte-stable
  nlohmann::json sidecar;  // resolved config + system summary
};

/// Runs the full Monte Carlo + bound comparison described by cfg and, when
/// cfg.output_dir is set, writes experiment.csv and experiment.json there.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct BallSample {
  std::string label;
  double radius = 0.0;
};

struct BallReport {
  BallEstimate smallest;
  std::vector<BallSample> samples;  // sorted by radius, ascending
  bool minimum_attained = false;    // smallest radius <= all sampled radii
};

BallReport ball_report(const ExperimentConfig& cfg,
                       std::size_t sample_count = 100);

std::string render_ball_report(const BallReport& report);
nlohmann::json ball_report_to_json(const BallReport& report);

/// On-disk system interchange: a JSON header next to CSV payloads.
void write_system_dir(const std::string& dir, const DenseMatrix& a,
                      const Vector& b, const nlohmann::json& provenance);

struct LoadedSystem {
  DenseMatrix a;
  Vector b;
  nlohmann::json header;
};

LoadedSystem read_system_dir(const std::string& dir);

/// Shortest round-trip decimal rendering used by every CSV writer.
std::string format_double(double v);

}  // namespace rkhorizon
