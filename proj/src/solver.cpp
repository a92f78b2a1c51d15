#include "rkhorizon/solver.hpp"

#include <cmath>
#include <string>

#include "rkhorizon/bounds.hpp"
#include "rkhorizon/errors.hpp"

namespace rkhorizon {

namespace {

Vector compute_row_sq_norms(const DenseMatrix& a) {
  Vector norms(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto row = a.row(i);
    double sq = 0.0;
    for (double v : row) sq += v * v;
    norms[i] = sq;
  }
  return norms;
}

}  // namespace

LinearSystem::LinearSystem(DenseMatrix a, Vector b)
    : a_(std::move(a)),
      b_(std::move(b)),
      row_sq_norms_(compute_row_sq_norms(a_)),
      dist_(build_row_distribution(a_)),
      cache_(std::make_unique<SvdCache>()) {
  if (b_.dim() != a_.rows()) {
    throw DimensionMismatch("LinearSystem: rhs dimension " +
                            std::to_string(b_.dim()) + " != rows " +
                            std::to_string(a_.rows()));
  }
}

LinearSystem::LinearSystem(DenseMatrix a, Vector b, SvdFactors precomputed_svd)
    : LinearSystem(std::move(a), std::move(b)) {
  cache_->factors = std::move(precomputed_svd);
}

const SvdFactors& LinearSystem::svd() const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  if (!cache_->factors) {
    cache_->factors = rkhorizon::svd(a_);
  }
  return *cache_->factors;
}

double LinearSystem::contraction_ratio() const {
  const SvdFactors& f = svd();
  return f.frob_sq / (f.sigma_min * f.sigma_min);
}

Vector rk_step(const LinearSystem& sys, const Vector& x, std::size_t i) {
  if (i >= sys.rows()) {
    throw DimensionMismatch("rk_step: row index out of range");
  }
  if (x.dim() != sys.cols()) {
    throw DimensionMismatch("rk_step: iterate dimension mismatch");
  }
  const double sq = sys.row_sq_norms()[i];
  if (sq == 0.0) {
    throw ZeroRow("rk_step: row " + std::to_string(i) + " has zero norm");
  }
  auto row = sys.matrix().row(i);
  double residual = -sys.rhs()[i];
  for (std::size_t j = 0; j < x.dim(); ++j) residual += row[j] * x[j];
  const double scale = residual / sq;
  Vector next(x.dim());
  for (std::size_t j = 0; j < x.dim(); ++j) next[j] = x[j] - scale * row[j];
  return next;
}

std::vector<std::size_t> default_checkpoints(std::size_t max_iters) {
  std::vector<std::size_t> cps;
  for (std::size_t k = 0; k <= std::min<std::size_t>(max_iters, 100); ++k) {
    cps.push_back(k);
  }
  while (cps.back() < max_iters) {
    std::size_t next = static_cast<std::size_t>(
        static_cast<double>(cps.back()) * 1.2);
    if (next <= cps.back()) next = cps.back() + 1;
    cps.push_back(std::min(next, max_iters));
  }
  return cps;
}

namespace {

void validate_checkpoints(const RkRunConfig& cfg) {
  const auto& cps = cfg.checkpoints;
  if (cps.empty() || cps.front() != 0 || cps.back() != cfg.max_iters) {
    throw std::invalid_argument(
        "run_rk: checkpoints must start at 0 and end at max_iters");
  }
  for (std::size_t i = 1; i < cps.size(); ++i) {
    if (cps[i] <= cps[i - 1]) {
      throw std::invalid_argument(
          "run_rk: checkpoints must be strictly increasing");
    }
  }
}

}  // namespace

IterateTrace run_rk(const LinearSystem& sys, const RkRunConfig& cfg) {
  if (cfg.x0.dim() != sys.cols()) {
    throw DimensionMismatch("run_rk: x0 dimension mismatch");
  }
  validate_checkpoints(cfg);

  IterateTrace trace;
  trace.checkpoints = cfg.checkpoints;
  trace.iterates.reserve(cfg.checkpoints.size());
  if (cfg.log_selected_rows) trace.selected_rows.reserve(cfg.max_iters);

  RngState rng(cfg.seed);
  const RowDistribution& dist = sys.distribution();
  const DenseMatrix& a = sys.matrix();
  const Vector& b = sys.rhs();
  const Vector& sq = sys.row_sq_norms();
  const std::size_t n = sys.cols();

  Vector x = cfg.x0;
  std::size_t next_cp = 0;
  for (std::size_t k = 0; k <= cfg.max_iters; ++k) {
    if (next_cp < cfg.checkpoints.size() && cfg.checkpoints[next_cp] == k) {
      trace.iterates.push_back(x);
      ++next_cp;
    }
    if (k == cfg.max_iters) break;

    const std::size_t i = sample_row(dist, rng);
    if (cfg.log_selected_rows) trace.selected_rows.push_back(i);
    auto row = a.row(i);
    double residual = -b[i];
    for (std::size_t j = 0; j < n; ++j) residual += row[j] * x[j];
    const double scale = residual / sq[i];
    for (std::size_t j = 0; j < n; ++j) x[j] -= scale * row[j];
  }
  return trace;
}

EmpiricalErrors empirical_expectations(const std::vector<IterateTrace>& traces,
                                       const ReferenceFrame& frame) {
  if (traces.empty()) {
    throw EmptyTraceSet("empirical_expectations: no traces");
  }
  const auto& cps = traces.front().checkpoints;
  for (const auto& t : traces) {
    if (t.checkpoints != cps) {
      throw MismatchedCheckpoints(
          "empirical_expectations: traces disagree on checkpoints");
    }
  }

  const std::size_t runs = traces.size();
  const std::size_t n = frame.center.dim();
  EmpiricalErrors out;
  out.checkpoints = cps;
  out.run_count = runs;
  out.rms_error.resize(cps.size());
  out.mean_error.resize(cps.size());
  out.rms_sq_stderr.resize(cps.size());
  out.mean_stderr.resize(cps.size());

  std::vector<double> sq_err(runs);
  for (std::size_t c = 0; c < cps.size(); ++c) {
    Vector mean(n);
    double sum_sq = 0.0;
    for (std::size_t r = 0; r < runs; ++r) {
      const Vector& xk = traces[r].iterates[c];
      if (xk.dim() != n) {
        throw DimensionMismatch("empirical_expectations: iterate dimension");
      }
      double sq = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double d = xk[j] - frame.center[j];
        sq += d * d;
        mean[j] += xk[j];
      }
      sq_err[r] = sq;
      sum_sq += sq;
    }
    const double mean_sq = sum_sq / static_cast<double>(runs);
    out.rms_error[c] = std::sqrt(mean_sq);

    double dev = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = mean[j] / static_cast<double>(runs) - frame.center[j];
      dev += d * d;
    }
    out.mean_error[c] = std::sqrt(dev);

    double var = 0.0;
    for (std::size_t r = 0; r < runs; ++r) {
      const double d = sq_err[r] - mean_sq;
      var += d * d;
    }
    if (runs > 1) var /= static_cast<double>(runs - 1);
    out.rms_sq_stderr[c] = std::sqrt(var / static_cast<double>(runs));
    out.mean_stderr[c] = out.rms_error[c] / std::sqrt(static_cast<double>(runs));
  }
  return out;
}

ProjectionStats empirical_projection(const std::vector<IterateTrace>& traces,
                                     const Vector& center,
                                     const Vector& direction) {
  if (traces.empty()) {
    throw EmptyTraceSet("empirical_projection: no traces");
  }
  const auto& cps = traces.front().checkpoints;
  for (const auto& t : traces) {
    if (t.checkpoints != cps) {
      throw MismatchedCheckpoints(
          "empirical_projection: traces disagree on checkpoints");
    }
  }
  const std::size_t runs = traces.size();
  ProjectionStats out;
  out.checkpoints = cps;
  out.run_count = runs;
  out.mean.resize(cps.size());
  out.stderr_of_mean.resize(cps.size());

  std::vector<double> samples(runs);
  for (std::size_t c = 0; c < cps.size(); ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < runs; ++r) {
      const Vector& xk = traces[r].iterates[c];
      double s = 0.0;
      for (std::size_t j = 0; j < direction.dim(); ++j) {
        s += (xk[j] - center[j]) * direction[j];
      }
      samples[r] = s;
      sum += s;
    }
    const double mean = sum / static_cast<double>(runs);
    out.mean[c] = mean;
    double var = 0.0;
    for (std::size_t r = 0; r < runs; ++r) {
      const double d = samples[r] - mean;
      var += d * d;
    }
    if (runs > 1) var /= static_cast<double>(runs - 1);
    out.stderr_of_mean[c] = std::sqrt(var / static_cast<double>(runs));
  }
  return out;
}

}  // namespace rkhorizon
