#include "epsolve/problems.hpp"

#include <cmath>
#include <random>

#include "epsolve/errors.hpp"

namespace epsolve {

SparseMatrix gen_periodic_convdiff(const PeriodicConvDiffSpec& spec) {
  const std::size_t m = spec.m;
  if (m < 3) throw contract_error("gen_periodic_convdiff: mesh needs m >= 3");
  const double md = static_cast<double>(m);
  // Coefficients built from m directly (not from h = 1/m) so that integer
  // mesh sizes give exactly representable stencil values.
  const double inv_h2 = md * md;
  const double conv = spec.d * md / 2.0;
  const std::size_t n = m * m;

  std::vector<SparseMatrix::Triplet> entries;
  entries.reserve(5 * n);
  auto idx = [m](std::size_t i1, std::size_t i2) { return i1 * m + i2; };
  for (std::size_t i1 = 0; i1 < m; ++i1) {
    for (std::size_t i2 = 0; i2 < m; ++i2) {
      const std::size_t row = idx(i1, i2);
      entries.push_back({row, row, -4.0 * inv_h2});
      entries.push_back({row, idx((i1 + 1) % m, i2), inv_h2 + conv});
      entries.push_back({row, idx((i1 + m - 1) % m, i2), inv_h2 - conv});
      entries.push_back({row, idx(i1, (i2 + 1) % m), inv_h2});
      entries.push_back({row, idx(i1, (i2 + m - 1) % m), inv_h2});
    }
  }
  return SparseMatrix::from_triplets(n, std::move(entries));
}

Vector gen_rhs_convdiff(const PeriodicConvDiffSpec& spec) {
  const std::size_t m = spec.m;
  if (m < 2) throw contract_error("gen_rhs_convdiff: mesh needs m >= 2");
  const double h = 1.0 / static_cast<double>(m);
  Vector b(m * m);
  for (std::size_t i1 = 0; i1 < m; ++i1)
    for (std::size_t i2 = 0; i2 < m; ++i2)
      b[i1 * m + i2] = static_cast<double>(i1) * h + static_cast<double>(i2) * h;
  return b;
}

namespace {

// Dense LU with partial pivoting, kept local to the inverse-iteration
// fallback. An exactly zero pivot is replaced by a tiny value of the
// matrix scale, which is what shift-zero inverse iteration on a singular
// matrix needs to keep going.
class DenseLu {
 public:
  explicit DenseLu(const SparseMatrix& a) : n_(a.n()), lu_(n_ * n_, 0.0), piv_(n_) {
    const auto& offs = a.row_offsets();
    const auto& cols = a.col_indices();
    const auto& vals = a.values();
    double scale = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t p = offs[i]; p < offs[i + 1]; ++p) {
        lu_[cols[p] * n_ + i] = vals[p];
        scale = std::max(scale, std::abs(vals[p]));
      }
    if (scale == 0.0) scale = 1.0;
    const double tiny = scale * 1e-300;

    for (std::size_t k = 0; k < n_; ++k) {
      std::size_t pivot = k;
      for (std::size_t i = k + 1; i < n_; ++i)
        if (std::abs(at(i, k)) > std::abs(at(pivot, k))) pivot = i;
      piv_[k] = pivot;
      if (pivot != k)
        for (std::size_t j = 0; j < n_; ++j) std::swap(at(k, j), at(pivot, j));
      if (at(k, k) == 0.0) at(k, k) = tiny;
      const double inv = 1.0 / at(k, k);
      for (std::size_t i = k + 1; i < n_; ++i) {
        const double f = at(i, k) * inv;
        at(i, k) = f;
        if (f == 0.0) continue;
        for (std::size_t j = k + 1; j < n_; ++j) at(i, j) -= f * at(k, j);
      }
    }
  }

  Vector solve(Vector rhs) const {
    for (std::size_t k = 0; k < n_; ++k) {
      std::swap(rhs[k], rhs[piv_[k]]);
      for (std::size_t i = k + 1; i < n_; ++i) rhs[i] -= at(i, k) * rhs[k];
    }
    for (std::size_t kk = 0; kk < n_; ++kk) {
      const std::size_t k = n_ - 1 - kk;
      for (std::size_t j = k + 1; j < n_; ++j) rhs[k] -= at(k, j) * rhs[j];
      rhs[k] /= at(k, k);
    }
    return rhs;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return lu_[j * n_ + i]; }
  double at(std::size_t i, std::size_t j) const { return lu_[j * n_ + i]; }
  std::size_t n_;
  std::vector<double> lu_;
  std::vector<std::size_t> piv_;
};

}  // namespace

Vector smallest_eigenvector(const SparseMatrix& a, std::uint64_t seed) {
  if (a.n() > 2000)
    throw contract_error(
        "smallest_eigenvector: dense fallback is limited to n <= 2000; "
        "supply the null vector directly for larger operators");
  DenseLu lu(a);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(a.n());
  for (double& x : v) x = gauss(rng);
  scale(v, 1.0 / norm2(v));

  for (int it = 0; it < 200; ++it) {
    Vector w = lu.solve(v);
    // the solve can blow entries up to ~1/pivot; normalize via the max
    // element first so the squared norm cannot overflow
    double amax = 0.0;
    for (double x : w) amax = std::max(amax, std::abs(x));
    if (!std::isfinite(amax) || amax == 0.0)
      throw numerical_error("smallest_eigenvector: inverse iteration failed");
    scale(w, 1.0 / amax);
    scale(w, 1.0 / norm2(w));
    v = std::move(w);
    Vector av = matvec(a, v);
    const double lambda = dot(av, v);
    axpy(-lambda, v, av);
    if (norm2(av) <= 1e-8) return v;
  }
  throw numerical_error("smallest_eigenvector: no convergence after 200 iterations");
}

Vector build_inconsistent_rhs(const SparseMatrix& a, const InconsistentRhsSpec& spec) {
  if (spec.perturbation_scale < 0.0)
    throw contract_error("build_inconsistent_rhs: scale must be nonnegative");
  Vector consistent = matvec(a, Vector(a.n(), 1.0));
  const double nc = norm2(consistent);
  if (nc == 0.0)
    throw contract_error(
        "build_inconsistent_rhs: A * ones = 0, the consistent part degenerates");
  scale(consistent, 1.0 / nc);
  if (spec.perturbation_scale == 0.0) return consistent;

  Vector v;
  if (spec.source == InconsistentRhsSpec::NullVectorSource::analytic) {
    if (spec.analytic_vector.size() != a.n())
      throw contract_error("build_inconsistent_rhs: analytic vector length mismatch");
    v = spec.analytic_vector;
    const double nv = norm2(v);
    if (nv == 0.0) throw contract_error("build_inconsistent_rhs: zero null vector");
    scale(v, 1.0 / nv);
  } else {
    v = smallest_eigenvector(a, spec.seed);
  }
  axpy(spec.perturbation_scale, v, consistent);
  return consistent;
}

}  // namespace epsolve
