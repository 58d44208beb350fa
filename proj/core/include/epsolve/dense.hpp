#ifndef EPSOLVE_DENSE_HPP
#define EPSOLVE_DENSE_HPP

#include <cstddef>
#include <vector>

#include "epsolve/vec.hpp"

namespace epsolve {

/// Column-major dense matrix for the small projected problems (Hessenberg
/// matrices, SVD factors). Not meant for the sparse operator itself.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

  double* col_data(std::size_t j) { return data_.data() + j * rows_; }
  const double* col_data(std::size_t j) const { return data_.data() + j * rows_; }

  double frobenius_norm() const;
  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix transpose(const DenseMatrix& a);
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
Vector multiply(const DenseMatrix& a, const Vector& x);

/// Full SVD a = u * diag(sigma) * v^T with square orthogonal factors and
/// sigma sorted nonincreasing (length min(rows, cols)).
struct SvdResult {
  DenseMatrix u;
  std::vector<double> sigma;
  DenseMatrix v;
};

/// One-sided Jacobi SVD. Throws numerical_error if the sweep cap (100) is
/// exceeded, which does not happen for the Hessenberg sizes this is used on.
SvdResult svd(const DenseMatrix& b);

/// Positive distance from |x| to the next larger representable double.
double ulp(double x);

/// max(rows, cols) * ulp(sigma_1), the numerical-rank truncation tolerance.
double default_tol(const DenseMatrix& b);

/// Pseudoinverse with singular values below tol treated as zero: keeps
/// sigma >= tol, drops sigma < tol. All values below tol dropped returns
/// the zero matrix.
DenseMatrix pinv_truncated(const DenseMatrix& b, double tol);

struct GivensRotation {
  double c = 1.0;
  double s = 0.0;
};

/// Running QR factorization of a Hessenberg matrix by Givens rotations,
/// with the rotated right-hand side carried along. A value that is
/// threaded through givens_update, one column per step.
class GivensState {
 public:
  /// Starts with the right-hand side (rhs_first, 0, 0, ...); for GMRES
  /// rhs_first is beta = ||r0||.
  explicit GivensState(double rhs_first) : g_{rhs_first} {}

  std::size_t size() const { return rots_.size(); }
  const std::vector<GivensRotation>& rotations() const { return rots_; }

  /// Rotated right-hand side, length size() + 1.
  const Vector& rhs() const { return g_; }

  /// |g_{k+1}|; for GMRES this equals ||b - A x_k||_2.
  double residual_norm() const { return std::abs(g_.back()); }

  /// The k x k upper-triangular factor.
  DenseMatrix triangular() const;

  /// Back-substitutes R y = g(1..k).
  Vector solve() const;

  friend GivensState givens_update(GivensState state, const Vector& new_column,
                                   double h_subdiag, double rhs_next);

 private:
  std::vector<std::vector<double>> r_cols_;  // column j holds rows 0..j
  std::vector<GivensRotation> rots_;
  Vector g_;
};

/// Absorbs one Hessenberg column: applies the stored rotations to
/// new_column (entries h_{1,k}..h_{k,k}), forms the rotation annihilating
/// h_subdiag = h_{k+1,k} >= 0, and updates R and g. rhs_next is the raw
/// right-hand-side entry appended at row k+1 before rotating (zero for
/// GMRES; v_{k+1}^T b for the range-restricted variants). When both pivots
/// are zero the rotation is the identity.
GivensState givens_update(GivensState state, const Vector& new_column,
                          double h_subdiag, double rhs_next = 0.0);

/// Solves R y = g bottom-up for square upper-triangular R. Throws
/// singular_triangular_error on a zero diagonal entry.
Vector back_substitute(const DenseMatrix& r, const Vector& g);

}  // namespace epsolve

#endif  // EPSOLVE_DENSE_HPP
