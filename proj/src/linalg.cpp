#include "rkhorizon/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rkhorizon/errors.hpp"

namespace rkhorizon {

namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument(std::string(what) +
                                  ": entries must be finite");
    }
  }
}

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimensions " +
                            std::to_string(a) + " and " + std::to_string(b));
  }
}

}  // namespace

Vector::Vector(std::initializer_list<double> values) : entries_(values) {
  require_finite(entries_, "Vector");
}

Vector::Vector(std::vector<double> values) : entries_(std::move(values)) {
  require_finite(entries_, "Vector");
}

double dot(const Vector& a, const Vector& b) {
  require_same_dim(a.dim(), b.dim(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vector& a) { return std::sqrt(dot(a, a)); }

Vector operator+(const Vector& a, const Vector& b) {
  require_same_dim(a.dim(), b.dim(), "vector add");
  Vector r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vector operator-(const Vector& a, const Vector& b) {
  require_same_dim(a.dim(), b.dim(), "vector sub");
  Vector r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vector operator*(double s, const Vector& a) {
  Vector r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = s * a[i];
  return r;
}

void axpy(double alpha, const Vector& x, Vector& y) {
  require_same_dim(x.dim(), y.dim(), "axpy");
  for (std::size_t i = 0; i < x.dim(); ++i) y[i] += alpha * x[i];
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("DenseMatrix: rows and cols must be >= 1");
  }
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("DenseMatrix: rows and cols must be >= 1");
  }
  if (entries_.size() != rows * cols) {
    throw DimensionMismatch("DenseMatrix: entry count does not match shape");
  }
  require_finite(entries_, "DenseMatrix");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double DenseMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : entries_) s += v * v;
  return std::sqrt(s);
}

Vector multiply(const DenseMatrix& a, const Vector& x) {
  require_same_dim(a.cols(), x.dim(), "matrix-vector multiply");
  Vector r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto row = a.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += row[j] * x[j];
    r[i] = s;
  }
  return r;
}

Vector multiply_transposed(const DenseMatrix& a, const Vector& y) {
  require_same_dim(a.rows(), y.dim(), "transposed matrix-vector multiply");
  Vector r(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto row = a.row(i);
    const double yi = y[i];
    for (std::size_t j = 0; j < a.cols(); ++j) r[j] += row[j] * yi;
  }
  return r;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_dim(a.cols(), b.rows(), "matrix multiply");
  DenseMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      auto brow = b.row(k);
      auto rrow = r.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j) rrow[j] += aik * brow[j];
    }
  }
  return r;
}

DenseMatrix transposed(const DenseMatrix& a) {
  DenseMatrix r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
  return r;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("matrix sub: shapes differ");
  }
  DenseMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

namespace {

// One-sided Jacobi on the columns of G (stored column-major, rows x cols,
// rows >= cols). Rotations orthogonalize column pairs and accumulate into
// W (cols x cols, column-major, initialized to identity), so that on exit
// G_in = G_out * W^T with the columns of G_out mutually orthogonal.
void jacobi_orthogonalize(std::vector<double>& g, std::vector<double>& w,
                          std::size_t rows, std::size_t cols) {
  constexpr double kOrthTol = 1e-15;
  constexpr int kMaxSweeps = 60;

  std::vector<double> col_sq(cols, 0.0);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double* gc = g.data() + c * rows;
      double s = 0.0;
      for (std::size_t r = 0; r < rows; ++r) s += gc[r] * gc[r];
      col_sq[c] = s;
    }

    bool rotated = false;
    for (std::size_t p = 0; p + 1 < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        const double alpha = col_sq[p];
        const double beta = col_sq[q];
        if (alpha == 0.0 || beta == 0.0) continue;

        double* gp = g.data() + p * rows;
        double* gq = g.data() + q * rows;
        double gamma = 0.0;
        for (std::size_t r = 0; r < rows; ++r) gamma += gp[r] * gq[r];
        if (std::abs(gamma) <= kOrthTol * std::sqrt(alpha * beta)) continue;

        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t =
            std::copysign(1.0, zeta) /
            (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;

        for (std::size_t r = 0; r < rows; ++r) {
          const double vp = gp[r];
          const double vq = gq[r];
          gp[r] = c * vp - s * vq;
          gq[r] = s * vp + c * vq;
        }
        double* wp = w.data() + p * cols;
        double* wq = w.data() + q * cols;
        for (std::size_t r = 0; r < cols; ++r) {
          const double vp = wp[r];
          const double vq = wq[r];
          wp[r] = c * vp - s * vq;
          wq[r] = s * vp + c * vq;
        }
        col_sq[p] = alpha - t * gamma;
        col_sq[q] = beta + t * gamma;
      }
    }
    if (!rotated) break;
  }
}

}  // namespace

SvdFactors svd(const DenseMatrix& a, std::optional<double> rank_tol) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m == 0 || n == 0) {
    throw std::invalid_argument("svd: empty matrix");
  }

  // Work on the taller orientation so the rotated side has few columns.
  const bool flip = m < n;
  const std::size_t rows = flip ? n : m;
  const std::size_t cols = flip ? m : n;

  std::vector<double> g(rows * cols);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = a(i, j);
      if (flip) {
        g[i * rows + j] = v;  // column i of A^T
      } else {
        g[j * rows + i] = v;  // column j of A
      }
    }
  }
  std::vector<double> w(cols * cols, 0.0);
  for (std::size_t c = 0; c < cols; ++c) w[c * cols + c] = 1.0;

  jacobi_orthogonalize(g, w, rows, cols);

  std::vector<double> sing(cols, 0.0);
  for (std::size_t c = 0; c < cols; ++c) {
    const double* gc = g.data() + c * rows;
    double s = 0.0;
    for (std::size_t r = 0; r < rows; ++r) s += gc[r] * gc[r];
    sing[c] = std::sqrt(s);
  }

  std::vector<std::size_t> order(cols);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return sing[x] > sing[y];
  });

  const double sigma1 = sing[order[0]];
  const double tol =
      rank_tol.value_or(static_cast<double>(std::max(m, n)) *
                        std::numeric_limits<double>::epsilon() * sigma1);

  std::size_t rank = 0;
  while (rank < cols && sing[order[rank]] > tol) ++rank;
  if (rank == 0) {
    throw AllZeroMatrix("svd: no singular value above threshold");
  }

  SvdFactors f;
  f.rank = rank;
  f.sigma = Vector(rank);
  // Left factor lives on the tall side, right factor on the rotated side.
  DenseMatrix tall(rows, rank);
  DenseMatrix wide(cols, rank);
  double frob_sq = 0.0;
  for (std::size_t k = 0; k < rank; ++k) {
    const std::size_t c = order[k];
    const double s = sing[c];
    f.sigma[k] = s;
    frob_sq += s * s;
    const double* gc = g.data() + c * rows;
    const double inv = 1.0 / s;
    for (std::size_t r = 0; r < rows; ++r) tall(r, k) = gc[r] * inv;
    const double* wc = w.data() + c * cols;
    for (std::size_t r = 0; r < cols; ++r) wide(r, k) = wc[r];
  }
  f.frob_sq = frob_sq;
  f.sigma_min = f.sigma[rank - 1];
  if (flip) {
    f.u = std::move(wide);  // m x rank
    f.v = std::move(tall);  // n x rank
  } else {
    f.u = std::move(tall);
    f.v = std::move(wide);
  }
  return f;
}

Vector min_norm_least_squares(const SvdFactors& f, const Vector& b) {
  require_same_dim(f.u.rows(), b.dim(), "min_norm_least_squares");
  Vector coeff(f.rank);
  for (std::size_t k = 0; k < f.rank; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.u.rows(); ++i) s += f.u(i, k) * b[i];
    coeff[k] = s / f.sigma[k];
  }
  Vector x(f.v.rows());
  for (std::size_t i = 0; i < f.v.rows(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < f.rank; ++k) s += f.v(i, k) * coeff[k];
    x[i] = s;
  }
  return x;
}

Vector project_row_space(const SvdFactors& f, const Vector& x) {
  require_same_dim(f.v.rows(), x.dim(), "project_row_space");
  Vector coeff(f.rank);
  for (std::size_t k = 0; k < f.rank; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.v.rows(); ++i) s += f.v(i, k) * x[i];
    coeff[k] = s;
  }
  Vector r(f.v.rows());
  for (std::size_t i = 0; i < f.v.rows(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < f.rank; ++k) s += f.v(i, k) * coeff[k];
    r[i] = s;
  }
  return r;
}

Vector project_null_space(const SvdFactors& f, const Vector& x) {
  Vector r = project_row_space(f, x);
  Vector out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) out[i] = x[i] - r[i];
  return out;
}

Vector project_col_space(const SvdFactors& f, const Vector& y) {
  require_same_dim(f.u.rows(), y.dim(), "project_col_space");
  Vector coeff(f.rank);
  for (std::size_t k = 0; k < f.rank; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.u.rows(); ++i) s += f.u(i, k) * y[i];
    coeff[k] = s;
  }
  Vector r(f.u.rows());
  for (std::size_t i = 0; i < f.u.rows(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < f.rank; ++k) s += f.u(i, k) * coeff[k];
    r[i] = s;
  }
  return r;
}

}  // namespace rkhorizon
