#include "epsolve/dense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "epsolve/errors.hpp"

namespace epsolve {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double DenseMatrix::frobenius_norm() const {
  double acc = 0.0;
  for (double v : data_) acc += v * v;
  return std::sqrt(acc);
}

bool DenseMatrix::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix t(a.cols(), a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) t(j, i) = a(i, j);
  return t;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw contract_error("multiply: inner dimensions differ");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const double blj = b(l, j);
      if (blj == 0.0) continue;
      const double* acol = a.col_data(l);
      double* ccol = c.col_data(j);
      for (std::size_t i = 0; i < a.rows(); ++i) ccol[i] += acol[i] * blj;
    }
  }
  return c;
}

Vector multiply(const DenseMatrix& a, const Vector& x) {
  if (a.cols() != x.size()) throw contract_error("multiply: vector length mismatch");
  Vector y(a.rows(), 0.0);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const double xj = x[j];
    if (xj == 0.0) continue;
    const double* acol = a.col_data(j);
    for (std::size_t i = 0; i < a.rows(); ++i) y[i] += acol[i] * xj;
  }
  return y;
}

namespace {

constexpr double kJacobiTol = 1e-15;
constexpr int kJacobiMaxSweeps = 100;

// One cyclic pass of one-sided Jacobi over all column pairs of a, the same
// rotations accumulated into v. Returns the largest cosine seen between a
// pair of nonzero columns (the convergence measure).
double jacobi_sweep(DenseMatrix& a, DenseMatrix& v) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  double worst = 0.0;
  for (std::size_t p = 0; p + 1 < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      double* ap = a.col_data(p);
      double* aq = a.col_data(q);
      double app = 0.0, aqq = 0.0, apq = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        app += ap[i] * ap[i];
        aqq += aq[i] * aq[i];
        apq += ap[i] * aq[i];
      }
      if (app == 0.0 || aqq == 0.0 || apq == 0.0) continue;
      const double cosine = std::abs(apq) / (std::sqrt(app) * std::sqrt(aqq));
      worst = std::max(worst, cosine);
      if (cosine <= kJacobiTol) continue;

      const double zeta = (aqq - app) / (2.0 * apq);
      const double t =
          (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
      const double c = 1.0 / std::sqrt(1.0 + t * t);
      const double s = c * t;

      for (std::size_t i = 0; i < m; ++i) {
        const double x = ap[i];
        const double y = aq[i];
        ap[i] = c * x - s * y;
        aq[i] = s * x + c * y;
      }
      double* vp = v.col_data(p);
      double* vq = v.col_data(q);
      for (std::size_t i = 0; i < v.rows(); ++i) {
        const double x = vp[i];
        const double y = vq[i];
        vp[i] = c * x - s * y;
        vq[i] = s * x + c * y;
      }
    }
  }
  return worst;
}

void jacobi_orthogonalize(DenseMatrix& a, DenseMatrix& v) {
  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (jacobi_sweep(a, v) <= kJacobiTol) return;
  }
  throw numerical_error("svd: one-sided Jacobi did not converge within 100 sweeps");
}

// Appends orthonormal columns to u until it is square, choosing at each
// slot the coordinate vector with the largest component outside the span
// of the accepted columns, then orthogonalizing it with two passes.
void complete_basis(DenseMatrix& u, std::size_t filled) {
  const std::size_t m = u.rows();
  while (filled < m) {
    // ||(I - P) e_t||^2 = 1 - sum_j u(t,j)^2 for orthonormal columns.
    std::size_t best = 0;
    double best_score = -1.0;
    for (std::size_t t = 0; t < m; ++t) {
      double proj = 0.0;
      for (std::size_t j = 0; j < filled; ++j) proj += u(t, j) * u(t, j);
      const double score = 1.0 - proj;
      if (score > best_score) {
        best_score = score;
        best = t;
      }
    }
    Vector w(m, 0.0);
    w[best] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < filled; ++j) {
        double c = 0.0;
        for (std::size_t i = 0; i < m; ++i) c += w[i] * u(i, j);
        for (std::size_t i = 0; i < m; ++i) w[i] -= c * u(i, j);
      }
    }
    const double nw = norm2(w);
    for (std::size_t i = 0; i < m; ++i) u(i, filled) = w[i] / nw;
    ++filled;
  }
}

}  // namespace

SvdResult svd(const DenseMatrix& b) {
  if (b.rows() == 0 || b.cols() == 0) throw contract_error("svd: empty matrix");
  if (!b.all_finite()) throw contract_error("svd: input has non-finite entries");
  if (b.rows() < b.cols()) {
    SvdResult r = svd(transpose(b));
    return SvdResult{std::move(r.v), std::move(r.sigma), std::move(r.u)};
  }

  const std::size_t m = b.rows();
  const std::size_t n = b.cols();
  DenseMatrix a = b;
  DenseMatrix v = DenseMatrix::identity(n);
  jacobi_orthogonalize(a, v);

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    const double* col = a.col_data(j);
    for (std::size_t i = 0; i < m; ++i) acc += col[i] * col[i];
    norms[j] = std::sqrt(acc);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  SvdResult out;
  out.sigma.resize(n);
  out.v = DenseMatrix(n, n);
  out.u = DenseMatrix(m, m);
  std::size_t filled = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.sigma[j] = norms[src];
    for (std::size_t i = 0; i < n; ++i) out.v(i, j) = v(i, src);
    if (norms[src] > 0.0) {
      const double inv = 1.0 / norms[src];
      const double* col = a.col_data(src);
      for (std::size_t i = 0; i < m; ++i) out.u(i, filled) = col[i] * inv;
      ++filled;
    }
  }
  // Nonzero sigmas sort first, so the built u columns line up with sigma;
  // the slots for sigma = 0 and the trailing m - n columns get an
  // orthonormal completion.
  complete_basis(out.u, filled);
  return out;
}

double ulp(double x) {
  x = std::abs(x);
  return std::nextafter(x, std::numeric_limits<double>::infinity()) - x;
}

double default_tol(const DenseMatrix& b) {
  const SvdResult f = svd(b);
  return static_cast<double>(std::max(b.rows(), b.cols())) * ulp(f.sigma.front());
}

DenseMatrix pinv_truncated(const DenseMatrix& b, double tol) {
  if (tol < 0.0) throw contract_error("pinv_truncated: tol must be nonnegative");
  const SvdResult f = svd(b);
  const std::size_t m = b.rows();
  const std::size_t n = b.cols();
  DenseMatrix p(n, m);
  for (std::size_t i = 0; i < f.sigma.size(); ++i) {
    const double s = f.sigma[i];
    if (s < tol || s == 0.0) continue;
    const double inv = 1.0 / s;
    for (std::size_t c = 0; c < m; ++c) {
      const double w = inv * f.u(c, i);
      if (w == 0.0) continue;
      for (std::size_t r = 0; r < n; ++r) p(r, c) += f.v(r, i) * w;
    }
  }
  return p;
}

DenseMatrix GivensState::triangular() const {
  const std::size_t k = r_cols_.size();
  DenseMatrix r(k, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i <= j; ++i) r(i, j) = r_cols_[j][i];
  return r;
}

Vector GivensState::solve() const {
  Vector head(g_.begin(), g_.end() - 1);
  return back_substitute(triangular(), head);
}

GivensState givens_update(GivensState state, const Vector& new_column,
                          double h_subdiag, double rhs_next) {
  const std::size_t k_prev = state.rots_.size();
  if (new_column.size() != k_prev + 1)
    throw contract_error("givens_update: column length must be k");
  if (h_subdiag < 0.0) throw contract_error("givens_update: h_subdiag must be >= 0");

  std::vector<double> col = new_column;
  for (std::size_t i = 0; i < k_prev; ++i) {
    const double x = col[i];
    const double y = col[i + 1];
    col[i] = state.rots_[i].c * x + state.rots_[i].s * y;
    col[i + 1] = -state.rots_[i].s * x + state.rots_[i].c * y;
  }

  const double pivot = col[k_prev];
  const double den = std::hypot(pivot, h_subdiag);
  GivensRotation rot;  // identity when both pivots vanish
  if (den > 0.0) rot = {pivot / den, h_subdiag / den};
  col[k_prev] = rot.c * pivot + rot.s * h_subdiag;

  state.g_.push_back(rhs_next);
  const double g0 = state.g_[k_prev];
  const double g1 = state.g_[k_prev + 1];
  state.g_[k_prev] = rot.c * g0 + rot.s * g1;
  state.g_[k_prev + 1] = -rot.s * g0 + rot.c * g1;

  state.rots_.push_back(rot);
  state.r_cols_.push_back(std::move(col));
  return state;
}

Vector back_substitute(const DenseMatrix& r, const Vector& g) {
  const std::size_t k = r.rows();
  if (r.cols() != k) throw contract_error("back_substitute: R must be square");
  if (g.size() != k) throw contract_error("back_substitute: rhs length mismatch");
  Vector y(k, 0.0);
  for (std::size_t ii = 0; ii < k; ++ii) {
    const std::size_t i = k - 1 - ii;
    double acc = g[i];
    for (std::size_t j = i + 1; j < k; ++j) acc -= r(i, j) * y[j];
    if (r(i, i) == 0.0)
      throw singular_triangular_error("back_substitute: zero diagonal entry");
    y[i] = acc / r(i, i);
  }
  return y;
}

}  // namespace epsolve
