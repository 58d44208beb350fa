#ifndef EPSOLVE_GROWING_SVD_HPP
#define EPSOLVE_GROWING_SVD_HPP

#include <cstddef>
#include <vector>

#include "epsolve/vec.hpp"

namespace epsolve::detail {

/// One-sided Jacobi factorization of a Hessenberg (or tridiagonal) matrix
/// that grows by one column and one row per iteration. The rotation
/// product from the previous step is kept as a warm start, so a refresh
/// after one append typically needs one or two sweeps instead of a full
/// cold factorization. Produces the same factors as epsolve::svd up to
/// column signs and accumulated rounding.
class GrowingSvd {
 public:
  explicit GrowingSvd(std::size_t max_cols);

  std::size_t cols() const { return cols_; }

  /// Appends the next column (length cols() + 2: head entries plus the
  /// subdiagonal). Invalidates sigma() until the next refresh().
  void append(const Vector& column);

  /// Sweeps until every column pair has cosine below 1e-15.
  void refresh();

  /// Singular values sorted nonincreasing; valid after refresh().
  const std::vector<double>& sigma() const { return sigma_sorted_; }

  /// Minimum-norm least-squares solution pinv(H, tol) * (beta e1):
  /// singular values below tol contribute nothing.
  Vector min_norm_solve(double beta, double tol) const;

  long count_below(double tol) const;

 private:
  std::size_t lda_;        // fixed leading dimension of a_ (max_cols + 1)
  std::size_t ldv_;        // fixed leading dimension of v_ (max_cols)
  std::size_t cols_ = 0;
  std::size_t rows_ = 1;
  std::vector<double> a_;  // a = h * v, column-major
  std::vector<double> v_;  // accumulated rotations, column-major
  std::vector<double> col_sq_;       // cached squared column norms during sweeps
  std::vector<double> norms_;        // per-column 2-norms (unsorted)
  std::vector<double> sigma_sorted_;

  double sweep();
};

}  // namespace epsolve::detail

#endif  // EPSOLVE_GROWING_SVD_HPP
