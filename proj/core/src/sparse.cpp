#include "epsolve/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "epsolve/errors.hpp"

namespace epsolve {

SparseMatrix SparseMatrix::from_triplets(std::size_t n, std::vector<Triplet> entries) {
  if (n == 0) throw contract_error("SparseMatrix: dimension must be >= 1");
  for (const Triplet& t : entries) {
    if (t.row >= n || t.col >= n)
      throw contract_error("SparseMatrix: triplet index out of range");
    if (!std::isfinite(t.value))
      throw contract_error("SparseMatrix: non-finite triplet value");
  }
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseMatrix m;
  m.n_ = n;
  m.row_offsets_.assign(n + 1, 0);
  std::size_t i = 0;
  for (std::size_t row = 0; row < n; ++row) {
    m.row_offsets_[row] = m.values_.size();
    while (i < entries.size() && entries[i].row == row) {
      const std::size_t col = entries[i].col;
      double sum = 0.0;
      while (i < entries.size() && entries[i].row == row && entries[i].col == col) {
        sum += entries[i].value;
        ++i;
      }
      if (sum != 0.0) {
        m.col_indices_.push_back(col);
        m.values_.push_back(sum);
      }
    }
  }
  m.row_offsets_[n] = m.values_.size();
  return m;
}

Vector matvec(const SparseMatrix& a, const Vector& x) {
  if (x.size() != a.n()) throw contract_error("matvec: vector length mismatch");
  const auto& offs = a.row_offsets();
  const auto& cols = a.col_indices();
  const auto& vals = a.values();
  Vector y(a.n(), 0.0);
  for (std::size_t i = 0; i < a.n(); ++i) {
    double acc = 0.0;
    for (std::size_t p = offs[i]; p < offs[i + 1]; ++p) acc += vals[p] * x[cols[p]];
    y[i] = acc;
  }
  for (double v : y) {
    if (!std::isfinite(v)) throw numerical_error("matvec: non-finite result");
  }
  return y;
}

Vector matvec_transpose(const SparseMatrix& a, const Vector& x) {
  if (x.size() != a.n()) throw contract_error("matvec_transpose: vector length mismatch");
  const auto& offs = a.row_offsets();
  const auto& cols = a.col_indices();
  const auto& vals = a.values();
  Vector y(a.n(), 0.0);
  for (std::size_t i = 0; i < a.n(); ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    for (std::size_t p = offs[i]; p < offs[i + 1]; ++p) y[cols[p]] += vals[p] * xi;
  }
  for (double v : y) {
    if (!std::isfinite(v)) throw numerical_error("matvec_transpose: non-finite result");
  }
  return y;
}

}  // namespace epsolve
