#include "epsolve/solvers.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "epsolve/arnoldi.hpp"
#include "epsolve/dense.hpp"
#include "epsolve/errors.hpp"
#include "growing_svd.hpp"

namespace epsolve {

std::string to_string(Method m) {
  switch (m) {
    case Method::gmres: return "gmres";
    case Method::gmres_pinv: return "gmres_pinv";
    case Method::rrgmres: return "rrgmres";
    case Method::minres: return "minres";
    case Method::rrminres: return "rrminres";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "gmres") return Method::gmres;
  if (name == "gmres_pinv") return Method::gmres_pinv;
  if (name == "rrgmres") return Method::rrgmres;
  if (name == "minres") return Method::minres;
  if (name == "rrminres") return Method::rrminres;
  throw format_error("unknown solver method '" + name + "'");
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::max_iter: return "max_iter";
    case Termination::threshold_met: return "threshold_met";
    case Termination::breakdown: return "breakdown";
    case Termination::trivial: return "trivial";
  }
  return "unknown";
}

namespace {

void validate(const SparseMatrix& a, const Vector& b, const SolveConfig& cfg) {
  if (b.size() != a.n()) throw contract_error("solve: rhs length mismatch");
  if (cfg.max_iter < 1) throw contract_error("solve: max_iter must be >= 1");
  if (cfg.tol_policy.kind == TolPolicy::Kind::fixed && cfg.tol_policy.fixed_value < 0.0)
    throw contract_error("solve: fixed tolerance must be nonnegative");
  if (cfg.stop_rule.kind == StopRule::Kind::atr_threshold && cfg.stop_rule.threshold <= 0.0)
    throw contract_error("solve: atr threshold must be positive");
  if (cfg.record_svd_every < 1) throw contract_error("solve: record_svd_every must be >= 1");
}

double tol_from_policy(const TolPolicy& policy, double sigma1, std::size_t rows,
                       std::size_t cols) {
  if (policy.kind == TolPolicy::Kind::fixed) return policy.fixed_value;
  return static_cast<double>(std::max(rows, cols)) * ulp(sigma1);
}

struct BestIterate {
  // below this the normal equations hold to rounding; such iterates count
  // as equal quality and the smaller-norm one is reported
  static constexpr double kConvergedAtr = 1e-14;

  double atr = std::numeric_limits<double>::infinity();
  Vector x;

  void offer(double atr_ratio, const Vector& candidate) {
    bool better;
    if (x.empty()) {
      better = true;
    } else if (atr_ratio < kConvergedAtr && atr < kConvergedAtr) {
      better = norm2(candidate) < norm2(x);
    } else {
      better = atr_ratio < atr ||
               (atr_ratio == atr && norm2(candidate) < norm2(x));
    }
    if (better) {
      atr = atr_ratio;
      x = candidate;
    }
  }
};

SolveResult trivial_result(const SparseMatrix& a, const SolveConfig& cfg) {
  SolveResult out;
  out.x.assign(a.n(), 0.0);
  out.history.config_echo = cfg;
  out.termination = Termination::trivial;
  return out;
}

// Fills the singular-value fields of a record from a refreshed
// factorization: the four smallest ratios (only once four exist) and the
// count below the truncation tolerance.
void fill_svd_fields(IterationRecord& rec, const detail::GrowingSvd& gsvd, double tol) {
  const auto& sig = gsvd.sigma();
  const std::size_t k = sig.size();
  if (k >= 4) {
    const double s1 = sig.front();
    rec.sig_ratios = {sig[k - 1] / s1, sig[k - 2] / s1, sig[k - 3] / s1, sig[k - 4] / s1};
  }
  rec.truncation_count = gsvd.count_below(tol);
}

SolveResult arnoldi_driver(const SparseMatrix& a, const Vector& b,
                           const SolveConfig& cfg, bool use_pinv,
                           bool range_restricted) {
  validate(a, b, cfg);
  SolveResult out;
  out.history.config_echo = cfg;
  out.termination = Termination::max_iter;

  const double beta = norm2(b);
  if (beta == 0.0) return trivial_result(a, cfg);
  const double atb = norm2(matvec_transpose(a, b));
  if (atb == 0.0) return trivial_result(a, cfg);  // x = 0 already minimizes ||A^T r||

  std::optional<ArnoldiState> state =
      range_restricted ? arnoldi_start(matvec(a, b)) : arnoldi_start(b);
  if (!state) return trivial_result(a, cfg);  // A b = 0: x = 0 is the minimizer

  GivensState givens(range_restricted ? dot(state->basis[0], b) : beta);
  detail::GrowingSvd gsvd(cfg.max_iter);
  BestIterate best;
  double head_sq_total = 0.0;  // running sum of squares of all h entries

  const std::size_t n = a.n();
  const std::size_t steps = std::min(cfg.max_iter, n);
  for (std::size_t k = 1; k <= steps; ++k) {
    arnoldi_step(*state, a, cfg.reorth);
    const Vector& hcol = state->h_cols[k - 1];
    const double hsub = hcol[k];
    Vector head(hcol.begin(), hcol.end() - 1);

    const double rhs_next =
        (range_restricted && !state->breakdown) ? dot(state->basis[k], b) : 0.0;
    givens = givens_update(std::move(givens), head, std::abs(hsub), rhs_next);
    gsvd.append(hcol);
    for (double h : hcol) head_sq_total += h * h;

    const bool svd_step = (k % cfg.record_svd_every) == 0;
    Vector y;
    double tol = 0.0;
    bool have_svd = false;
    if (use_pinv) {
      gsvd.refresh();
      have_svd = true;
      tol = tol_from_policy(cfg.tol_policy, gsvd.sigma().front(), k + 1, k);
      y = gsvd.min_norm_solve(beta, tol);
    } else {
      try {
        y = givens.solve();
      } catch (const singular_triangular_error&) {
        out.termination = Termination::breakdown;
        break;
      }
      if (svd_step) {
        gsvd.refresh();
        have_svd = true;
        tol = tol_from_policy(cfg.tol_policy, gsvd.sigma().front(), k + 1, k);
      }
    }

    Vector x(n, 0.0);
    for (std::size_t i = 0; i < k; ++i) axpy(y[i], state->basis[i], x);
    Vector r = b;
    axpy(-1.0, matvec(a, x), r);

    IterationRecord rec;
    rec.k = static_cast<int>(k);
    rec.res_norm = norm2(r);
    rec.atr_ratio = norm2(matvec_transpose(a, r)) / atb;
    rec.givens_s = std::abs(givens.rotations().back().s);
    const double hkk_sq = head_sq_total - hsub * hsub;
    if (hkk_sq > 0.0) rec.h_ratio = hsub / std::sqrt(hkk_sq);
    double head_min = std::numeric_limits<double>::infinity();
    for (double h : head) {
      if (h != 0.0) head_min = std::min(head_min, std::abs(h));
    }
    if (std::isfinite(head_min)) rec.h_min_ratio = hsub / head_min;
    if (svd_step && have_svd) fill_svd_fields(rec, gsvd, tol);
    out.history.records.push_back(rec);

    best.offer(rec.atr_ratio, x);
    if (cfg.stop_rule.kind == StopRule::Kind::atr_threshold &&
        rec.atr_ratio <= cfg.stop_rule.threshold) {
      out.termination = Termination::threshold_met;
      break;
    }
    if (state->breakdown) {
      out.termination = Termination::breakdown;
      break;
    }
  }

  out.x = best.x.empty() ? Vector(n, 0.0) : std::move(best.x);
  return out;
}

SolveResult minres_driver(const SparseMatrix& a, const Vector& b,
                          const SolveConfig& cfg, bool range_restricted) {
  validate(a, b, cfg);
  SolveResult out;
  out.history.config_echo = cfg;
  out.termination = Termination::max_iter;

  const double beta0 = norm2(b);
  if (beta0 == 0.0) return trivial_result(a, cfg);
  const double atb = norm2(matvec_transpose(a, b));
  if (atb == 0.0) return trivial_result(a, cfg);

  std::optional<LanczosState> state =
      range_restricted ? lanczos_start(matvec(a, b)) : lanczos_start(b);
  if (!state) return trivial_result(a, cfg);

  const std::size_t n = a.n();
  detail::GrowingSvd gsvd(cfg.max_iter);
  BestIterate best;

  // pending right-hand-side entry at the current rotation row
  double pending = range_restricted ? dot(state->v_cur, b) : beta0;
  double c_prev = 1.0, s_prev = 0.0;    // rotation k-1
  double c_prev2 = 1.0, s_prev2 = 0.0;  // rotation k-2
  Vector d_prev(n, 0.0), d_prev2(n, 0.0);
  Vector x(n, 0.0);
  double sum_alpha_sq = 0.0;
  double sum_beta_sq = 0.0;  // beta_1^2 + ... + beta_{k-1}^2

  const std::size_t steps = std::min(cfg.max_iter, n);
  for (std::size_t k = 1; k <= steps; ++k) {
    lanczos_step(*state, a);
    const double alpha = state->alpha[k - 1];
    const double beta_new = state->beta[k - 1];
    const double beta_old = k >= 2 ? state->beta[k - 2] : 0.0;

    // rotate column k of the tridiagonal through the two live rotations
    double eps = 0.0, delta = 0.0, abar = alpha;
    if (k >= 2) {
      const double btilde = c_prev2 * beta_old;
      eps = s_prev2 * beta_old;
      delta = c_prev * btilde + s_prev * alpha;
      abar = -s_prev * btilde + c_prev * alpha;
    }
    const double rho = std::hypot(abar, beta_new);
    if (rho == 0.0) {
      // column vanished entirely: no new iterate can be formed
      out.termination = Termination::breakdown;
      break;
    }
    const double c = abar / rho;
    const double s = beta_new / rho;

    const double t_next =
        (range_restricted && state->v_next) ? dot(*state->v_next, b) : 0.0;
    const double phi = c * pending + s * t_next;
    pending = -s * pending + c * t_next;

    // d_k = (v_k - delta d_{k-1} - eps d_{k-2}) / rho; x += phi d_k
    Vector d = state->v_cur;
    if (k >= 2) axpy(-delta, d_prev, d);
    if (k >= 3) axpy(-eps, d_prev2, d);
    scale(d, 1.0 / rho);
    axpy(phi, d, x);
    d_prev2 = std::move(d_prev);
    d_prev = std::move(d);
    c_prev2 = c_prev;
    s_prev2 = s_prev;
    c_prev = c;
    s_prev = s;

    Vector col(k + 1, 0.0);
    if (k >= 2) col[k - 2] = beta_old;
    col[k - 1] = alpha;
    col[k] = beta_new;
    gsvd.append(col);

    Vector r = b;
    axpy(-1.0, matvec(a, x), r);

    IterationRecord rec;
    rec.k = static_cast<int>(k);
    rec.res_norm = norm2(r);
    rec.atr_ratio = norm2(matvec_transpose(a, r)) / atb;
    rec.givens_s = std::abs(s);
    sum_alpha_sq += alpha * alpha;
    const double hkk_sq = sum_alpha_sq + 2.0 * sum_beta_sq;
    if (hkk_sq > 0.0) rec.h_ratio = beta_new / std::sqrt(hkk_sq);
    sum_beta_sq += beta_new * beta_new;
    double head_min = std::numeric_limits<double>::infinity();
    if (beta_old != 0.0) head_min = std::abs(beta_old);
    if (alpha != 0.0) head_min = std::min(head_min, std::abs(alpha));
    if (std::isfinite(head_min)) rec.h_min_ratio = beta_new / head_min;
    if ((k % cfg.record_svd_every) == 0) {
      gsvd.refresh();
      const double tol =
          tol_from_policy(cfg.tol_policy, gsvd.sigma().front(), k + 1, k);
      fill_svd_fields(rec, gsvd, tol);
    }
    out.history.records.push_back(rec);

    best.offer(rec.atr_ratio, x);
    if (cfg.stop_rule.kind == StopRule::Kind::atr_threshold &&
        rec.atr_ratio <= cfg.stop_rule.threshold) {
      out.termination = Termination::threshold_met;
      break;
    }
    if (state->breakdown) {
      out.termination = Termination::breakdown;
      break;
    }
  }

  out.x = best.x.empty() ? Vector(n, 0.0) : std::move(best.x);
  return out;
}

}  // namespace

SolveResult solve_gmres(const SparseMatrix& a, const Vector& b, const SolveConfig& cfg) {
  return arnoldi_driver(a, b, cfg, /*use_pinv=*/false, /*range_restricted=*/false);
}

SolveResult solve_gmres_pinv(const SparseMatrix& a, const Vector& b,
                             const SolveConfig& cfg) {
  return arnoldi_driver(a, b, cfg, /*use_pinv=*/true, /*range_restricted=*/false);
}

SolveResult solve_rrgmres(const SparseMatrix& a, const Vector& b,
                          const SolveConfig& cfg) {
  return arnoldi_driver(a, b, cfg, /*use_pinv=*/false, /*range_restricted=*/true);
}

SolveResult solve_minres(const SparseMatrix& a, const Vector& b, const SolveConfig& cfg) {
  return minres_driver(a, b, cfg, /*range_restricted=*/false);
}

SolveResult solve_rrminres(const SparseMatrix& a, const Vector& b,
                           const SolveConfig& cfg) {
  return minres_driver(a, b, cfg, /*range_restricted=*/true);
}

SolveResult solve(const SparseMatrix& a, const Vector& b, const SolveConfig& cfg) {
  switch (cfg.method) {
    case Method::gmres: return solve_gmres(a, b, cfg);
    case Method::gmres_pinv: return solve_gmres_pinv(a, b, cfg);
    case Method::rrgmres: return solve_rrgmres(a, b, cfg);
    case Method::minres: return solve_minres(a, b, cfg);
    case Method::rrminres: return solve_rrminres(a, b, cfg);
  }
  throw contract_error("solve: unknown method");
}

}  // namespace epsolve
