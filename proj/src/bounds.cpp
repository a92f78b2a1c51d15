#include "rkhorizon/bounds.hpp"

#include <cmath>
#include <string>

#include "rkhorizon/errors.hpp"

namespace rkhorizon {

namespace {

// (1 - q)^k computed as exp(k log1p(-q)) so large k does not drift through
// repeated multiplication. q is clamped to [0, 1]; k = 0 always yields 1.
double decay_pow(double q, std::size_t k) {
  if (k == 0) return 1.0;
  if (q >= 1.0) return 0.0;
  if (q <= 0.0) return 1.0;
  return std::exp(static_cast<double>(k) * std::log1p(-q));
}

Vector subtract(const Vector& a, const Vector& b) { return a - b; }

}  // namespace

ReferenceFrame make_frame(const LinearSystem& sys, const Vector& x0,
                          const Vector& x_star) {
  if (x0.dim() != sys.cols() || x_star.dim() != sys.cols()) {
    throw DimensionMismatch("make_frame: point dimension != cols");
  }
  const SvdFactors& f = sys.svd();
  ReferenceFrame frame;
  frame.x0 = x0;
  frame.x_star = x_star;
  frame.x0_null = project_null_space(f, x0);
  frame.x_star_row = project_row_space(f, x_star);
  frame.center = frame.x0_null + frame.x_star_row;
  frame.residual = subtract(multiply(sys.matrix(), x_star), sys.rhs());
  frame.residual_norm = norm(frame.residual);
  return frame;
}

namespace {

// ||x0^r - x_*^r|| for the frame.
double row_gap(const ReferenceFrame& frame) {
  double sq = 0.0;
  for (std::size_t i = 0; i < frame.x0.dim(); ++i) {
    const double d =
        (frame.x0[i] - frame.x0_null[i]) - frame.x_star_row[i];
    sq += d * d;
  }
  return std::sqrt(sq);
}

}  // namespace

BoundCurve mse_bound_curve(const LinearSystem& sys, const ReferenceFrame& frame,
                           const std::vector<std::size_t>& checkpoints) {
  const SvdFactors& f = sys.svd();
  const double q = f.sigma_min * f.sigma_min / f.frob_sq;
  const double gap = row_gap(frame);
  const double gap_sq = gap * gap;
  const double horizon =
      frame.residual_norm * frame.residual_norm / (f.sigma_min * f.sigma_min);

  BoundCurve curve;
  curve.kind = BoundKind::mse_thm22;
  curve.checkpoints = checkpoints;
  curve.horizon = horizon;
  curve.values.reserve(checkpoints.size());
  for (std::size_t k : checkpoints) {
    curve.values.push_back(decay_pow(q, k) * gap_sq + horizon);
  }
  return curve;
}

BoundCurve mean_bound_curve(const LinearSystem& sys,
                            const ReferenceFrame& frame,
                            const std::vector<std::size_t>& checkpoints) {
  const SvdFactors& f = sys.svd();
  const double q = f.sigma_min * f.sigma_min / f.frob_sq;
  const double gap = row_gap(frame);
  const double horizon = frame.residual_norm / f.sigma_min;

  BoundCurve curve;
  curve.kind = BoundKind::mean_cor33;
  curve.checkpoints = checkpoints;
  curve.horizon = horizon;
  curve.values.reserve(checkpoints.size());
  for (std::size_t k : checkpoints) {
    curve.values.push_back(decay_pow(q, k) * gap + horizon);
  }
  return curve;
}

BoundCurve underlying_pair_bound(const LinearSystem& sys,
                                 const DenseMatrix& a_true,
                                 const Vector& b_true, const Vector& x0,
                                 const std::vector<std::size_t>& checkpoints) {
  if (a_true.rows() != sys.rows() || a_true.cols() != sys.cols()) {
    throw DimensionMismatch("underlying_pair_bound: shape of A differs");
  }
  if (b_true.dim() != sys.rows()) {
    throw DimensionMismatch("underlying_pair_bound: dimension of b");
  }
  const SvdFactors true_f = rkhorizon::svd(a_true);
  const Vector x_ls = min_norm_least_squares(true_f, b_true);
  const Vector reproduced = multiply(a_true, x_ls);
  const double defect = norm(reproduced - b_true);
  if (defect > 1e-8 * norm(b_true)) {
    throw InconsistentUnderlying(
        "underlying_pair_bound: A x_LS - b has norm " + std::to_string(defect));
  }

  // E x_LS - eps with E = A_noisy - A, eps = b_noisy - b. By consistency
  // this equals A_noisy x_LS - b_noisy; both are formed explicitly so the
  // bound follows the underlying-pair phrasing.
  Vector noise_term(sys.rows());
  const Vector ex = multiply(sys.matrix() - a_true, x_ls);
  for (std::size_t i = 0; i < sys.rows(); ++i) {
    noise_term[i] = ex[i] - (sys.rhs()[i] - b_true[i]);
  }
  const double noise_norm = norm(noise_term);

  const SvdFactors& f = sys.svd();
  const double q = f.sigma_min * f.sigma_min / f.frob_sq;
  const Vector x0_row = project_row_space(f, x0);
  const Vector ls_row = project_row_space(f, x_ls);
  const double gap = norm(x0_row - ls_row);
  const double horizon = noise_norm * noise_norm / (f.sigma_min * f.sigma_min);

  BoundCurve curve;
  curve.kind = BoundKind::underlying_thm13;
  curve.checkpoints = checkpoints;
  curve.horizon = horizon;
  curve.values.reserve(checkpoints.size());
  for (std::size_t k : checkpoints) {
    curve.values.push_back(decay_pow(q, k) * gap * gap + horizon);
  }
  return curve;
}

double expected_singular_coefficient(const LinearSystem& sys,
                                     const ReferenceFrame& frame,
                                     std::size_t j, std::size_t k) {
  const SvdFactors& f = sys.svd();
  if (j < 1 || j > f.rank) {
    throw IndexOutOfRank("expected_singular_coefficient: j = " +
                         std::to_string(j) + ", rank = " +
                         std::to_string(f.rank));
  }
  const std::size_t idx = j - 1;
  const double sigma_j = f.sigma[idx];
  const double q = sigma_j * sigma_j / f.frob_sq;
  const double dk = decay_pow(q, k);

  double start_coeff = 0.0;  // <x0^r - x_*^r, v_j>
  for (std::size_t i = 0; i < frame.x0.dim(); ++i) {
    start_coeff +=
        ((frame.x0[i] - frame.x0_null[i]) - frame.x_star_row[i]) * f.v(i, idx);
  }
  double residual_coeff = 0.0;  // <A x_* - b, u_j>
  for (std::size_t i = 0; i < frame.residual.dim(); ++i) {
    residual_coeff += frame.residual[i] * f.u(i, idx);
  }
  return dk * start_coeff - (1.0 - dk) * residual_coeff / sigma_j;
}

namespace {

// One step of the expectation recursion, in place.
void mean_recursion_step(const LinearSystem& sys, const Vector& drive,
                         Vector& z) {
  const Vector az = multiply(sys.matrix(), z);
  const Vector ataz = multiply_transposed(sys.matrix(), az);
  const double inv = 1.0 / sys.svd().frob_sq;
  for (std::size_t i = 0; i < z.dim(); ++i) {
    z[i] -= ataz[i] * inv + drive[i];
  }
}

}  // namespace

Vector exact_mean_iterate(const LinearSystem& sys, const ReferenceFrame& frame,
                          std::size_t k) {
  if (k == 0) return frame.x0;
  const double inv = 1.0 / sys.svd().frob_sq;
  const Vector drive =
      inv * multiply_transposed(sys.matrix(), frame.residual);
  Vector z = frame.x0 - frame.center;
  for (std::size_t step = 0; step < k; ++step) {
    mean_recursion_step(sys, drive, z);
  }
  return z + frame.center;
}

std::vector<Vector> exact_mean_iterates(
    const LinearSystem& sys, const ReferenceFrame& frame,
    const std::vector<std::size_t>& checkpoints) {
  const double inv = 1.0 / sys.svd().frob_sq;
  const Vector drive =
      inv * multiply_transposed(sys.matrix(), frame.residual);
  Vector z = frame.x0 - frame.center;

  std::vector<Vector> out;
  out.reserve(checkpoints.size());
  std::size_t next = 0;
  const std::size_t last = checkpoints.empty() ? 0 : checkpoints.back();
  for (std::size_t k = 0; k <= last; ++k) {
    if (next < checkpoints.size() && checkpoints[next] == k) {
      out.push_back(k == 0 ? frame.x0 : z + frame.center);
      ++next;
    }
    if (k == last) break;
    mean_recursion_step(sys, drive, z);
  }
  return out;
}

BallEstimate ball_for_reference(const LinearSystem& sys,
                                const ReferenceFrame& frame) {
  BallEstimate ball;
  ball.center = frame.center;
  ball.radius = frame.residual_norm / sys.svd().sigma_min;
  return ball;
}

BallEstimate smallest_ball(const LinearSystem& sys, const Vector& x0) {
  const SvdFactors& f = sys.svd();
  const Vector x_ls = min_norm_least_squares(f, sys.rhs());
  const Vector residual = multiply(sys.matrix(), x_ls) - sys.rhs();
  BallEstimate ball;
  ball.center = project_null_space(f, x0) + x_ls;
  ball.radius = norm(residual) / f.sigma_min;
  return ball;
}

namespace {

// Deterministic orthonormal extension of the columns of basis (stored as an
// n x r matrix) by one extra unit vector orthogonal to all of them. Probes
// canonical directions and keeps the first with a usable residual.
Vector orthonormal_complement_column(const DenseMatrix& basis) {
  const std::size_t n = basis.rows();
  const std::size_t r = basis.cols();
  for (std::size_t probe = 0; probe < n; ++probe) {
    Vector cand(n);
    cand[probe] = 1.0;
    // Two rounds of Gram-Schmidt for orthogonality near machine precision.
    for (int round = 0; round < 2; ++round) {
      for (std::size_t k = 0; k < r; ++k) {
        double proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += basis(i, k) * cand[i];
        for (std::size_t i = 0; i < n; ++i) cand[i] -= proj * basis(i, k);
      }
    }
    const double len = norm(cand);
    if (len > 1e-4) {
      return (1.0 / len) * cand;
    }
  }
  throw std::logic_error("orthonormal_complement_column: basis spans space");
}

}  // namespace

ConsistentPair construct_minimizing_pair(const LinearSystem& sys,
                                         const Vector& y_null,
                                         const MinimizingPairShape& shape) {
  if (y_null.dim() != sys.cols()) {
    throw DimensionMismatch("construct_minimizing_pair: y_null dimension");
  }
  const SvdFactors& f = sys.svd();
  const double y_norm = norm(y_null);
  const double violation = norm(multiply(sys.matrix(), y_null));
  if (violation > 1e-10 * std::max(1.0, f.sigma[0] * y_norm)) {
    throw NullSpaceViolation(
        "construct_minimizing_pair: A y_null has norm " +
        std::to_string(violation));
  }

  const Vector x_ls = min_norm_least_squares(f, sys.rhs());
  const Vector x_target = x_ls + y_null;

  const bool extend = y_norm > 0.0;
  if (!extend && !shape.u && !shape.sigma) {
    // Canonical minimizer: the system's own matrix with its inconsistent
    // rhs component removed.
    return {sys.matrix(), multiply(sys.matrix(), x_ls)};
  }

  const std::size_t m = sys.rows();
  const std::size_t n = sys.cols();
  // With a nonzero null component the right factor gains one direction,
  // unless the rank already equals m, in which case a rank-m basis that
  // contains x_target is built instead.
  const bool full_row_rank = f.rank == m;
  const std::size_t r = (extend && !full_row_rank) ? f.rank + 1 : f.rank;

  DenseMatrix v(n, r);
  if (extend && full_row_rank) {
    // Orthonormalize [x_target, v_1, v_2, ...] and keep the first r columns.
    std::size_t filled = 0;
    Vector lead = (1.0 / norm(x_target)) * x_target;
    for (std::size_t i = 0; i < n; ++i) v(i, filled) = lead[i];
    ++filled;
    for (std::size_t k = 0; k < f.rank && filled < r; ++k) {
      Vector cand(n);
      for (std::size_t i = 0; i < n; ++i) cand[i] = f.v(i, k);
      for (int round = 0; round < 2; ++round) {
        for (std::size_t c = 0; c < filled; ++c) {
          double proj = 0.0;
          for (std::size_t i = 0; i < n; ++i) proj += v(i, c) * cand[i];
          for (std::size_t i = 0; i < n; ++i) cand[i] -= proj * v(i, c);
        }
      }
      const double len = norm(cand);
      if (len <= 1e-8) continue;  // direction already represented
      for (std::size_t i = 0; i < n; ++i) v(i, filled) = cand[i] / len;
      ++filled;
    }
    if (filled != r) {
      throw std::logic_error("construct_minimizing_pair: basis incomplete");
    }
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < f.rank; ++k) v(i, k) = f.v(i, k);
    if (extend) {
      const double inv = 1.0 / y_norm;
      for (std::size_t i = 0; i < n; ++i) v(i, f.rank) = y_null[i] * inv;
    }
  }

  DenseMatrix u(m, r);
  if (shape.u) {
    if (shape.u->rows() != m || shape.u->cols() != r) {
      throw DimensionMismatch(
          "construct_minimizing_pair: custom U must be m x " +
          std::to_string(r));
    }
    u = *shape.u;
  } else {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < f.rank; ++k) u(i, k) = f.u(i, k);
    if (r == f.rank + 1) {
      const Vector extra = orthonormal_complement_column(f.u);
      for (std::size_t i = 0; i < m; ++i) u(i, f.rank) = extra[i];
    }
  }

  Vector sigma(r);
  if (shape.sigma) {
    if (shape.sigma->dim() != r) {
      throw DimensionMismatch(
          "construct_minimizing_pair: custom sigma must have " +
          std::to_string(r) + " entries");
    }
    for (std::size_t k = 0; k < r; ++k) {
      if ((*shape.sigma)[k] <= 0.0) {
        throw std::invalid_argument(
            "construct_minimizing_pair: sigma entries must be positive");
      }
    }
    sigma = *shape.sigma;
  } else {
    for (std::size_t k = 0; k < f.rank; ++k) sigma[k] = f.sigma[k];
    if (r == f.rank + 1) sigma[f.rank] = f.sigma_min;
  }

  // A_hat = U Sigma V^T, b_hat = A_hat x_target; since x_target is in
  // range(V), the least squares solution of the pair is exactly x_target.
  DenseMatrix a_hat(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t jj = 0; jj < n; ++jj) {
      double s = 0.0;
      for (std::size_t k = 0; k < r; ++k) s += u(i, k) * sigma[k] * v(jj, k);
      a_hat(i, jj) = s;
    }
  }
  Vector b_hat = multiply(a_hat, x_target);
  return {std::move(a_hat), std::move(b_hat)};
}

}  // namespace rkhorizon
