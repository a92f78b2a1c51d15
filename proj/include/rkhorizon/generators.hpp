#pragma once

#include <cstdint>

#include "rkhorizon/linalg.hpp"
#include "rkhorizon/sampling.hpp"
#include "rkhorizon/solver.hpp"

namespace rkhorizon {

/// Parameters of the synthetic instance family: an m x n matrix of rank r
/// built as a product of Gaussian factors, with a right-hand side whose
/// component off the column space has norm beta.
struct SyntheticSpec {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t r = 0;
  double beta = 0.0;
  std::uint64_t seed = 0;
};

Vector gaussian_vector(std::size_t dim, RngState& rng);
DenseMatrix gaussian_matrix(std::size_t rows, std::size_t cols, RngState& rng);

/// Product of an m x r and an r x n standard Gaussian matrix; rank r almost
/// surely.
DenseMatrix gen_low_rank_gaussian(const SyntheticSpec& spec);

/// b = A g + beta * w with g Gaussian and w a unit vector in the orthogonal
/// complement of the column space (projected Gaussian, resampled on a
/// degenerate draw). Throws NoComplement when beta > 0 and rank(A) = m.
Vector gen_rhs_with_residual(const DenseMatrix& a, const SvdFactors& f,
                             double beta, std::uint64_t seed);

/// Convenience overload computing the SVD internally.
Vector gen_rhs_with_residual(const DenseMatrix& a, double beta,
                             std::uint64_t seed);

enum class ReferenceMode { random, lstsq, singular_vector };

struct ReferencePoints {
  Vector x0;
  Vector x_star;
};

/// x0 is always Gaussian; x_star is Gaussian (random), the minimum-norm
/// least squares solution (lstsq), or the singular_index-th right singular
/// vector (1-based). Throws IndexOutOfRank for a bad index.
ReferencePoints gen_reference_points(std::size_t n, ReferenceMode mode,
                                     std::size_t singular_index,
                                     const LinearSystem& sys,
                                     std::uint64_t seed);

}  // namespace rkhorizon
