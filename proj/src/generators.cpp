#include "rkhorizon/generators.hpp"

#include <stdexcept>
#include <string>

#include "rkhorizon/errors.hpp"

namespace rkhorizon {

Vector gaussian_vector(std::size_t dim, RngState& rng) {
  Vector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = rng.next_gaussian();
  return v;
}

DenseMatrix gaussian_matrix(std::size_t rows, std::size_t cols,
                            RngState& rng) {
  DenseMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.next_gaussian();
  return m;
}

DenseMatrix gen_low_rank_gaussian(const SyntheticSpec& spec) {
  if (spec.m == 0 || spec.n == 0 || spec.r == 0 ||
      spec.r > std::min(spec.m, spec.n)) {
    throw std::invalid_argument(
        "gen_low_rank_gaussian: need 1 <= r <= min(m, n)");
  }
  RngState rng(spec.seed);
  const DenseMatrix left = gaussian_matrix(spec.m, spec.r, rng);
  const DenseMatrix right = gaussian_matrix(spec.r, spec.n, rng);
  return multiply(left, right);
}

Vector gen_rhs_with_residual(const DenseMatrix& a, const SvdFactors& f,
                             double beta, std::uint64_t seed) {
  if (beta < 0.0) {
    throw std::invalid_argument("gen_rhs_with_residual: beta must be >= 0");
  }
  RngState rng(seed);
  const Vector g = gaussian_vector(a.cols(), rng);
  Vector b = multiply(a, g);
  if (beta == 0.0) return b;

  if (f.rank >= a.rows()) {
    throw NoComplement(
        "gen_rhs_with_residual: column space fills R^m, no room for beta > 0");
  }
  for (;;) {
    const Vector h = gaussian_vector(a.rows(), rng);
    const Vector in_col = project_col_space(f, h);
    Vector off = h - in_col;
    const double len = norm(off);
    if (len <= 1e-8 * norm(h)) continue;  // degenerate draw, resample
    const double scale = beta / len;
    for (std::size_t i = 0; i < b.dim(); ++i) b[i] += scale * off[i];
    return b;
  }
}

Vector gen_rhs_with_residual(const DenseMatrix& a, double beta,
                             std::uint64_t seed) {
  const SvdFactors f = svd(a);
  return gen_rhs_with_residual(a, f, beta, seed);
}

ReferencePoints gen_reference_points(std::size_t n, ReferenceMode mode,
                                     std::size_t singular_index,
                                     const LinearSystem& sys,
                                     std::uint64_t seed) {
  RngState rng(seed);
  ReferencePoints pts;
  pts.x0 = gaussian_vector(n, rng);
  switch (mode) {
    case ReferenceMode::random:
      pts.x_star = gaussian_vector(n, rng);
      break;
    case ReferenceMode::lstsq:
      pts.x_star = min_norm_least_squares(sys.svd(), sys.rhs());
      break;
    case ReferenceMode::singular_vector: {
      const SvdFactors& f = sys.svd();
      if (singular_index < 1 || singular_index > f.rank) {
        throw IndexOutOfRank("gen_reference_points: singular index " +
                             std::to_string(singular_index));
      }
      Vector v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = f.v(i, singular_index - 1);
      pts.x_star = std::move(v);
      break;
    }
  }
  return pts;
}

}  // namespace rkhorizon
