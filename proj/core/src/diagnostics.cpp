#include "epsolve/diagnostics.hpp"

#include <cmath>

#include "epsolve/errors.hpp"

namespace epsolve {

double frobenius_identity_check(const DenseMatrix& h,
                                const std::vector<Vector>& a_times_basis) {
  const std::size_t k = h.cols();
  if (h.rows() != k + 1 || a_times_basis.size() != k)
    throw contract_error("frobenius_identity_check: inconsistent shapes");

  double av_sq = 0.0;
  for (const Vector& col : a_times_basis)
    for (double v : col) av_sq += v * v;

  double hkk_sq = 0.0;
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i) hkk_sq += h(i, j) * h(i, j);
  const double hsub = h(k, k - 1);

  return std::abs(av_sq - hkk_sq - hsub * hsub) / av_sq;
}

double condition_number(const SvdResult& f) {
  return f.sigma.front() / f.sigma.back();
}

double truncated_condition_number(const SvdResult& f, double tol) {
  return f.sigma.front() / tol;
}

}  // namespace epsolve
