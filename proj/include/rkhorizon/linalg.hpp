#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace rkhorizon {

/// Dense column vector. Entries are validated to be finite when constructed
/// from user data; internal arithmetic assumes finiteness is preserved.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim) : entries_(dim, 0.0) {}
  Vector(std::initializer_list<double> values);
  explicit Vector(std::vector<double> values);

  std::size_t dim() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  double& operator[](std::size_t i) { return entries_[i]; }

  std::span<const double> entries() const { return entries_; }
  std::span<double> entries() { return entries_; }

 private:
  std::vector<double> entries_;
};

double dot(const Vector& a, const Vector& b);
double norm(const Vector& a);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(double s, const Vector& a);
/// y += alpha * x
void axpy(double alpha, const Vector& x, Vector& y);

/// Dense real matrix, row-major. Rows and columns are at least 1 for any
/// matrix built through the checked constructors.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  double& operator()(std::size_t r, std::size_t c) {
    return entries_[r * cols_ + c];
  }

  std::span<const double> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) {
    return {entries_.data() + r * cols_, cols_};
  }

  double frobenius_norm() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

Vector multiply(const DenseMatrix& a, const Vector& x);            // A x
Vector multiply_transposed(const DenseMatrix& a, const Vector& y);  // A^T y
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix transposed(const DenseMatrix& a);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);

/// Compact singular value decomposition A = U diag(sigma) V^T keeping only
/// singular values above the numerical-rank threshold. U (m x rank) and
/// V (n x rank) have orthonormal columns; sigma is strictly positive and
/// non-increasing.
struct SvdFactors {
  DenseMatrix u;
  Vector sigma;
  DenseMatrix v;
  std::size_t rank = 0;
  double frob_sq = 0.0;    // sum of retained sigma_j^2
  double sigma_min = 0.0;  // smallest retained singular value
};

/// One-sided Jacobi SVD. Retains singular values strictly above
/// rank_tol when given, otherwise above max(m, n) * eps * sigma_1.
/// Throws AllZeroMatrix when nothing survives the threshold.
SvdFactors svd(const DenseMatrix& a,
               std::optional<double> rank_tol = std::nullopt);

/// Minimum-norm least squares solution A^+ b = V diag(sigma)^-1 U^T b.
Vector min_norm_least_squares(const SvdFactors& f, const Vector& b);

/// Orthogonal projection V V^T x onto range(A^T).
Vector project_row_space(const SvdFactors& f, const Vector& x);

/// Orthogonal projection x - V V^T x onto null(A).
Vector project_null_space(const SvdFactors& f, const Vector& x);

/// Orthogonal projection U U^T y onto the column space of A.
Vector project_col_space(const SvdFactors& f, const Vector& y);

}  // namespace rkhorizon
