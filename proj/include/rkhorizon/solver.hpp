#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "rkhorizon/linalg.hpp"
#include "rkhorizon/sampling.hpp"

namespace rkhorizon {

struct ReferenceFrame;  // defined in bounds.hpp

/// The pair (A, b) with cached row squared norms, the row-sampling
/// distribution, and a lazily computed compact SVD. Immutable once built;
/// the SVD cache is guarded so shared instances are safe across threads.
class LinearSystem {
 public:
  LinearSystem(DenseMatrix a, Vector b);
  LinearSystem(DenseMatrix a, Vector b, SvdFactors precomputed_svd);

  const DenseMatrix& matrix() const { return a_; }
  const Vector& rhs() const { return b_; }
  const Vector& row_sq_norms() const { return row_sq_norms_; }
  const RowDistribution& distribution() const { return dist_; }
  std::size_t rows() const { return a_.rows(); }
  std::size_t cols() const { return a_.cols(); }

  const SvdFactors& svd() const;

  /// ||A||_F^2 / sigma_min^2; the reciprocal is the per-step contraction.
  double contraction_ratio() const;

 private:
  DenseMatrix a_;
  Vector b_;
  Vector row_sq_norms_;
  RowDistribution dist_;
  struct SvdCache {
    std::mutex mutex;
    std::optional<SvdFactors> factors;
  };
  std::unique_ptr<SvdCache> cache_;
};

/// Single projection step onto the hyperplane of row i:
/// x - (a_i^T x - b_i) / ||a_i||^2 * a_i.
Vector rk_step(const LinearSystem& sys, const Vector& x, std::size_t i);

struct RkRunConfig {
  std::uint64_t seed = 0;
  std::size_t max_iters = 0;
  /// Strictly increasing, must contain 0 and max_iters.
  std::vector<std::size_t> checkpoints;
  Vector x0;
  bool log_selected_rows = false;
};

/// Every iteration up to 100, then geometric spacing with ratio ~1.2,
/// always ending at max_iters.
std::vector<std::size_t> default_checkpoints(std::size_t max_iters);

struct IterateTrace {
  std::vector<std::size_t> checkpoints;
  std::vector<Vector> iterates;
  std::vector<std::size_t> selected_rows;  // full sequence when logged
};

/// Runs max_iters randomized steps with rows sampled from the system's
/// distribution using a generator seeded by cfg.seed, recording the iterate
/// at each checkpoint. Deterministic given (sys, cfg).
IterateTrace run_rk(const LinearSystem& sys, const RkRunConfig& cfg);

/// Monte Carlo error summaries around the frame's center x0^n + x_*^r.
/// rms_error[k] = sqrt(mean_runs ||x_k - center||^2) and
/// mean_error[k] = ||mean_runs(x_k) - center||; accumulation runs in trace
/// order so output is bit-stable. Standard errors: rms_sq_stderr is the
/// sample std of ||x_k - center||^2 over sqrt(runs); mean_stderr uses the
/// conservative bound rms/sqrt(runs), which dominates the delta-method
/// stderr of any projection of the mean.
struct EmpiricalErrors {
  std::vector<std::size_t> checkpoints;
  std::vector<double> rms_error;
  std::vector<double> mean_error;
  std::vector<double> rms_sq_stderr;
  std::vector<double> mean_stderr;
  std::size_t run_count = 0;
};

EmpiricalErrors empirical_expectations(const std::vector<IterateTrace>& traces,
                                       const ReferenceFrame& frame);

/// Per-checkpoint mean and stderr of <x_k - center, direction> over runs.
struct ProjectionStats {
  std::vector<std::size_t> checkpoints;
  std::vector<double> mean;
  std::vector<double> stderr_of_mean;
  std::size_t run_count = 0;
};

ProjectionStats empirical_projection(const std::vector<IterateTrace>& traces,
                                     const Vector& center,
                                     const Vector& direction);

}  // namespace rkhorizon
