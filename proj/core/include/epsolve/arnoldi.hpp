#ifndef EPSOLVE_ARNOLDI_HPP
#define EPSOLVE_ARNOLDI_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "epsolve/dense.hpp"
#include "epsolve/sparse.hpp"
#include "epsolve/vec.hpp"

namespace epsolve {

/// Orthonormal Krylov basis v_1..v_{k+1} and the Hessenberg coefficients
/// satisfying A V_k = V_{k+1} H_{k+1,k}. Basis vectors are kept for the
/// full (unrestarted) run; memory is O(n * k_max). Owned by a single solve.
struct ArnoldiState {
  std::vector<Vector> basis;          // v_1 .. v_{k+1} (v_{k+1} absent after breakdown)
  std::vector<Vector> h_cols;         // column j holds h_{1,j}..h_{j+1,j}
  bool breakdown = false;

  std::size_t steps() const { return h_cols.size(); }
  double h_subdiag(std::size_t j) const { return h_cols[j].back(); }

  /// Materializes H_{k+1,k} for the first k columns.
  DenseMatrix hessenberg(std::size_t k) const;
};

/// v_1 = r0 / ||r0||; returns nullopt when r0 = 0 (the trivial-residual
/// signal: the current iterate is already optimal).
std::optional<ArnoldiState> arnoldi_start(const Vector& r0);

/// One modified Gram-Schmidt step: w = A v_k - sum h_{i,k} v_i with each
/// coefficient subtracted as it is computed. With reorth, one further full
/// pass subtracts (w, v_i) v_i and folds the corrections into h_{i,k} so
/// the Arnoldi relation holds to rounding. h_{k+1,k} = ||w||; a zero norm
/// sets the breakdown flag instead of appending v_{k+1}.
void arnoldi_step(ArnoldiState& state, const SparseMatrix& a, bool reorth);

/// Three-term recurrence basis for the MINRES family. Only the last two
/// basis vectors are re-touched; the tridiagonal coefficients are kept for
/// diagnostics. Requires symmetric A (the caller's responsibility).
struct LanczosState {
  Vector v_prev;                      // v_{k-1}; empty at the first step
  Vector v_cur;                       // v_k
  std::optional<Vector> v_next;       // v_{k+1}; absent before step 1 and after breakdown
  std::vector<double> alpha;          // diagonal entries
  std::vector<double> beta;           // subdiagonals beta_1..beta_k
  bool breakdown = false;

  std::size_t steps() const { return alpha.size(); }

  /// Materializes T_{k+1,k} for the first k columns.
  DenseMatrix tridiagonal(std::size_t k) const;
};

std::optional<LanczosState> lanczos_start(const Vector& r0);

void lanczos_step(LanczosState& state, const SparseMatrix& a);

}  // namespace epsolve

#endif  // EPSOLVE_ARNOLDI_HPP
