#ifndef EPSOLVE_SPARSE_HPP
#define EPSOLVE_SPARSE_HPP

#include <cstddef>
#include <vector>

#include "epsolve/vec.hpp"

namespace epsolve {

/// Square sparse matrix in CSR form. Immutable after construction and safe
/// to share across concurrent solves. Within each row the column indices
/// are strictly increasing; exact zeros are dropped at build time.
class SparseMatrix {
 public:
  struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
  };

  /// Builds CSR from unordered triplets: entries are sorted, duplicate
  /// (row, col) pairs summed, and values that are exactly zero after
  /// summation dropped.
  static SparseMatrix from_triplets(std::size_t n, std::vector<Triplet> entries);

  std::size_t n() const { return n_; }
  std::size_t nnz() const { return values_.size(); }

  const std::vector<std::size_t>& row_offsets() const { return row_offsets_; }
  const std::vector<std::size_t>& col_indices() const { return col_indices_; }
  const std::vector<double>& values() const { return values_; }

 private:
  SparseMatrix() = default;
  std::size_t n_ = 0;
  std::vector<std::size_t> row_offsets_;
  std::vector<std::size_t> col_indices_;
  std::vector<double> values_;
};

/// y = A x. Throws contract_error on length mismatch and numerical_error if
/// the result overflows to non-finite values.
Vector matvec(const SparseMatrix& a, const Vector& x);

/// y = A^T x, computed from the same CSR by a column-accumulation sweep
/// (no transpose is formed or cached).
Vector matvec_transpose(const SparseMatrix& a, const Vector& x);

}  // namespace epsolve

#endif  // EPSOLVE_SPARSE_HPP
