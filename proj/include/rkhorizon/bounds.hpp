#pragma once

#include <optional>
#include <vector>

#include "rkhorizon/linalg.hpp"
#include "rkhorizon/solver.hpp"

namespace rkhorizon {

/// Reference data for error measurement: the initial point, an arbitrary
/// reference point, their projections onto null(A) and range(A^T), the
/// combined center x0^n + x_*^r that the iterates cluster around, and the
/// residual A x_* - b whose norm drives the horizon.
struct ReferenceFrame {
  Vector x0;
  Vector x_star;
  Vector x0_null;      // projection of x0 onto null(A)
  Vector x_star_row;   // projection of x_* onto range(A^T)
  Vector center;       // x0_null + x_star_row
  Vector residual;     // A x_* - b
  double residual_norm = 0.0;
};

ReferenceFrame make_frame(const LinearSystem& sys, const Vector& x0,
                          const Vector& x_star);

enum class BoundKind { mse_thm22, mean_cor33, underlying_thm13 };

/// A closed-form curve over iteration checkpoints together with its
/// k -> infinity limit.
struct BoundCurve {
  std::vector<std::size_t> checkpoints;
  std::vector<double> values;
  double horizon = 0.0;
  BoundKind kind = BoundKind::mse_thm22;
};

/// Mean-squared-error bound:
/// (1 - sigma_min^2/||A||_F^2)^k ||x0^r - x_*^r||^2 + ||A x_* - b||^2/sigma_min^2.
BoundCurve mse_bound_curve(const LinearSystem& sys, const ReferenceFrame& frame,
                           const std::vector<std::size_t>& checkpoints);

/// Error-of-the-mean bound:
/// (1 - sigma_min^2/||A||_F^2)^k ||x0^r - x_*^r|| + ||A x_* - b||/sigma_min.
BoundCurve mean_bound_curve(const LinearSystem& sys,
                            const ReferenceFrame& frame,
                            const std::vector<std::size_t>& checkpoints);

/// MSE bound phrased against a consistent underlying pair (A, b): with
/// x_LS = A^+ b, E = sys.matrix() - A, eps = sys.rhs() - b, the horizon is
/// ||E x_LS - eps||^2 / sigma_min^2 and the center is x0^n + x_LS^r.
/// Throws InconsistentUnderlying when A x_LS fails to reproduce b.
BoundCurve underlying_pair_bound(const LinearSystem& sys,
                                 const DenseMatrix& a_true,
                                 const Vector& b_true, const Vector& x0,
                                 const std::vector<std::size_t>& checkpoints);

/// Exact expectation of <x_k - center, v_j> (j is 1-based, <= rank):
/// d^k <x0^r - x_*^r, v_j> - (1 - d^k) <A x_* - b, u_j> / sigma_j
/// with d = 1 - sigma_j^2 / ||A||_F^2.
double expected_singular_coefficient(const LinearSystem& sys,
                                     const ReferenceFrame& frame,
                                     std::size_t j, std::size_t k);

/// Exact E[x_k] via the expectation recursion
/// z <- (I - A^T A / ||A||_F^2) z - A^T (A x_* - b) / ||A||_F^2
/// started from z = x0 - center. Serves as the independent oracle for the
/// closed form above and for Monte Carlo means.
Vector exact_mean_iterate(const LinearSystem& sys, const ReferenceFrame& frame,
                          std::size_t k);

/// Same recursion propagated once, snapshotting E[x_k] at each checkpoint.
std::vector<Vector> exact_mean_iterates(
    const LinearSystem& sys, const ReferenceFrame& frame,
    const std::vector<std::size_t>& checkpoints);

struct BallEstimate {
  Vector center;
  double radius = 0.0;
};

/// Ball B(x0^n + x_*^r, ||A x_* - b|| / sigma_min) for the frame's reference.
BallEstimate ball_for_reference(const LinearSystem& sys,
                                const ReferenceFrame& frame);

/// The minimum-radius ball over all reference points: centered at
/// x0^n + x_LS with x_LS = A^+ b, radius ||A x_LS - b|| / sigma_min.
BallEstimate smallest_ball(const LinearSystem& sys, const Vector& x0);

/// Optional factors for construct_minimizing_pair. When absent, the system's
/// own singular vectors and values are used (extended by one direction when
/// y_null is nonzero).
struct MinimizingPairShape {
  std::optional<DenseMatrix> u;  // m x r, orthonormal columns
  std::optional<Vector> sigma;   // r positive values
};

struct ConsistentPair {
  DenseMatrix a;
  Vector b;
};

/// Builds a consistent pair (A_hat, b_hat) whose least squares solution is
/// x_LS + y_null and whose noise residual norm attains the minimum
/// ||A x_LS - b||. y_null must lie in null(A) (NullSpaceViolation otherwise).
ConsistentPair construct_minimizing_pair(
    const LinearSystem& sys, const Vector& y_null,
    const MinimizingPairShape& shape = {});

}  // namespace rkhorizon
