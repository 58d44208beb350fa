#include "epsolve/arnoldi.hpp"

#include "epsolve/errors.hpp"

namespace epsolve {

DenseMatrix ArnoldiState::hessenberg(std::size_t k) const {
  DenseMatrix h(k + 1, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < h_cols[j].size() && i <= k; ++i)
      h(i, j) = h_cols[j][i];
  return h;
}

std::optional<ArnoldiState> arnoldi_start(const Vector& r0) {
  const double beta = norm2(r0);
  if (beta == 0.0) return std::nullopt;
  ArnoldiState state;
  Vector v1 = r0;
  scale(v1, 1.0 / beta);
  state.basis.push_back(std::move(v1));
  return state;
}

void arnoldi_step(ArnoldiState& state, const SparseMatrix& a, bool reorth) {
  if (state.breakdown) throw contract_error("arnoldi_step: state is in breakdown");
  const std::size_t k = state.steps();
  if (k >= a.n()) throw contract_error("arnoldi_step: basis already spans the space");

  Vector w = matvec(a, state.basis[k]);
  Vector h(k + 2, 0.0);
  for (std::size_t i = 0; i <= k; ++i) {
    h[i] = dot(w, state.basis[i]);
    axpy(-h[i], state.basis[i], w);
  }
  if (reorth) {
    for (std::size_t i = 0; i <= k; ++i) {
      const double c = dot(w, state.basis[i]);
      axpy(-c, state.basis[i], w);
      h[i] += c;
    }
  }
  const double hs = norm2(w);
  h[k + 1] = hs;
  state.h_cols.push_back(std::move(h));
  if (hs > 0.0) {
    scale(w, 1.0 / hs);
    state.basis.push_back(std::move(w));
  } else {
    state.breakdown = true;
  }
}

DenseMatrix LanczosState::tridiagonal(std::size_t k) const {
  DenseMatrix t(k + 1, k);
  for (std::size_t j = 0; j < k; ++j) {
    if (j > 0) t(j - 1, j) = beta[j - 1];
    t(j, j) = alpha[j];
    t(j + 1, j) = beta[j];
  }
  return t;
}

std::optional<LanczosState> lanczos_start(const Vector& r0) {
  const double beta = norm2(r0);
  if (beta == 0.0) return std::nullopt;
  LanczosState state;
  state.v_cur = r0;
  scale(state.v_cur, 1.0 / beta);
  return state;
}

void lanczos_step(LanczosState& state, const SparseMatrix& a) {
  if (state.breakdown) throw contract_error("lanczos_step: state is in breakdown");
  const std::size_t k = state.steps();
  if (k >= a.n()) throw contract_error("lanczos_step: basis already spans the space");
  if (k > 0) {
    // advance the window: v_{k} becomes the new center
    state.v_prev = std::move(state.v_cur);
    state.v_cur = std::move(*state.v_next);
  }

  Vector w = matvec(a, state.v_cur);
  if (k > 0) axpy(-state.beta[k - 1], state.v_prev, w);
  const double al = dot(w, state.v_cur);
  axpy(-al, state.v_cur, w);
  const double be = norm2(w);
  state.alpha.push_back(al);
  state.beta.push_back(be);
  if (be > 0.0) {
    scale(w, 1.0 / be);
    state.v_next = std::move(w);
  } else {
    state.v_next.reset();
    state.breakdown = true;
  }
}

}  // namespace epsolve
