#include "growing_svd.hpp"

#include <algorithm>
#include <cmath>

#include "epsolve/errors.hpp"

namespace epsolve::detail {

namespace {

constexpr double kTol = 1e-15;
constexpr int kMaxSweeps = 100;

// Deterministic 4-way unrolled dot product; the fixed association order
// makes it reproducible while letting the compiler pipeline the loop.
double dot_cols(const double* x, const double* y, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += x[i] * y[i];
    s1 += x[i + 1] * y[i + 1];
    s2 += x[i + 2] * y[i + 2];
    s3 += x[i + 3] * y[i + 3];
  }
  for (; i < n; ++i) s0 += x[i] * y[i];
  return (s0 + s1) + (s2 + s3);
}

}  // namespace

GrowingSvd::GrowingSvd(std::size_t max_cols)
    : lda_(max_cols + 1),
      ldv_(max_cols),
      a_(lda_ * max_cols, 0.0),
      v_(ldv_ * max_cols, 0.0) {}

void GrowingSvd::append(const Vector& column) {
  if (cols_ >= ldv_) throw contract_error("GrowingSvd: capacity exhausted");
  if (column.size() != cols_ + 2) throw contract_error("GrowingSvd: bad column length");
  double* acol = a_.data() + cols_ * lda_;
  std::copy(column.begin(), column.end(), acol);
  v_[cols_ * ldv_ + cols_] = 1.0;
  ++cols_;
  rows_ = cols_ + 1;
}

double GrowingSvd::sweep() {
  double worst = 0.0;
  for (std::size_t p = 0; p + 1 < cols_; ++p) {
    for (std::size_t q = p + 1; q < cols_; ++q) {
      const double app = col_sq_[p];
      const double aqq = col_sq_[q];
      if (app == 0.0 || aqq == 0.0) continue;
      double* ap = a_.data() + p * lda_;
      double* aq = a_.data() + q * lda_;
      const double apq = dot_cols(ap, aq, rows_);
      if (apq == 0.0) continue;
      const double cosine = std::abs(apq) / (std::sqrt(app) * std::sqrt(aqq));
      worst = std::max(worst, cosine);
      if (cosine <= kTol) continue;

      const double zeta = (aqq - app) / (2.0 * apq);
      const double t =
          (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
      const double c = 1.0 / std::sqrt(1.0 + t * t);
      const double s = c * t;
      for (std::size_t i = 0; i < rows_; ++i) {
        const double x = ap[i];
        const double y = aq[i];
        ap[i] = c * x - s * y;
        aq[i] = s * x + c * y;
      }
      double* vp = v_.data() + p * ldv_;
      double* vq = v_.data() + q * ldv_;
      for (std::size_t i = 0; i < cols_; ++i) {
        const double x = vp[i];
        const double y = vq[i];
        vp[i] = c * x - s * y;
        vq[i] = s * x + c * y;
      }
      // the rotation moves t*apq of squared mass between the columns; the
      // cached update cancels catastrophically when a column collapses, so
      // recompute exactly whenever most of the mass is gone
      const double delta = t * apq;
      const double newp = app - delta;
      const double newq = aqq + delta;
      col_sq_[p] = newp > 0.25 * app ? newp : dot_cols(ap, ap, rows_);
      col_sq_[q] = newq > 0.25 * aqq ? newq : dot_cols(aq, aq, rows_);
    }
  }
  return worst;
}

void GrowingSvd::refresh() {
  col_sq_.assign(cols_, 0.0);
  for (std::size_t j = 0; j < cols_; ++j) {
    const double* col = a_.data() + j * lda_;
    col_sq_[j] = dot_cols(col, col, rows_);
  }
  int it = 0;
  while (sweep() > kTol) {
    if (++it >= kMaxSweeps)
      throw numerical_error("GrowingSvd: Jacobi did not converge within 100 sweeps");
  }
  norms_.assign(cols_, 0.0);
  for (std::size_t j = 0; j < cols_; ++j) {
    const double* col = a_.data() + j * lda_;
    norms_[j] = std::sqrt(dot_cols(col, col, rows_));
  }
  sigma_sorted_ = norms_;
  std::sort(sigma_sorted_.begin(), sigma_sorted_.end(), std::greater<double>());
}

Vector GrowingSvd::min_norm_solve(double beta, double tol) const {
  Vector y(cols_, 0.0);
  for (std::size_t j = 0; j < cols_; ++j) {
    const double s = norms_[j];
    if (s < tol || s == 0.0) continue;
    // u_j^T e1 = a(0,j) / s, so the coefficient on v_j is beta a(0,j) / s^2
    const double coef = beta * a_[j * lda_] / (s * s);
    const double* vcol = v_.data() + j * ldv_;
    for (std::size_t i = 0; i < cols_; ++i) y[i] += coef * vcol[i];
  }
  return y;
}

long GrowingSvd::count_below(double tol) const {
  long count = 0;
  for (double s : norms_) {
    if (s < tol) ++count;
  }
  return count;
}

}  // namespace epsolve::detail
