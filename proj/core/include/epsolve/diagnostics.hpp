#ifndef EPSOLVE_DIAGNOSTICS_HPP
#define EPSOLVE_DIAGNOSTICS_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "epsolve/config.hpp"
#include "epsolve/dense.hpp"
#include "epsolve/vec.hpp"

namespace epsolve {

/// Everything measured at one iteration. Ratios that are undefined early
/// (fewer than four singular values) or skipped by the SVD cadence are
/// absent, not zero.
struct IterationRecord {
  int k = 0;
  double res_norm = 0.0;   // ||b - A x_k||_2
  double atr_ratio = 0.0;  // ||A^T r_k||_2 / ||A^T b||_2

  /// {sigma_k, sigma_{k-1}, sigma_{k-2}, sigma_{k-3}} / sigma_1 of
  /// H_{k+1,k}: the four smallest singular values, smallest first.
  std::optional<std::array<double, 4>> sig_ratios;

  /// h_{k+1,k} / ||H_{k,k}||_F; the (k+1) x k variant follows from it as
  /// rho / sqrt(1 + rho^2) since the extra row holds only h_{k+1,k}.
  std::optional<double> h_ratio;

  /// h_{k+1,k} / min |h_{i,k}| over the nonzero entries of column k.
  std::optional<double> h_min_ratio;

  /// Number of singular values below the truncation tolerance.
  std::optional<long> truncation_count;

  double givens_s = 0.0;  // |s_k| of the k-th rotation
};

struct ConvergenceHistory {
  std::vector<IterationRecord> records;  // indexed contiguously from k = 1
  SolveConfig config_echo;
  std::string problem_tag;
};

/// Relative defect of ||A V_k||_F^2 = ||H_{k,k}||_F^2 + h_{k+1,k}^2, given
/// the columns A v_1..A v_k. Stays below 1e-10 while the basis is
/// orthonormal; grows once orthogonality is lost.
double frobenius_identity_check(const DenseMatrix& h,
                                const std::vector<Vector>& a_times_basis);

/// sigma_1 / sigma_min of the factored matrix.
double condition_number(const SvdResult& f);

/// sigma_1 / tol: the condition number of the truncated-pseudoinverse
/// solve path, which replaces sigma_min once truncation kicks in.
double truncated_condition_number(const SvdResult& f, double tol);

}  // namespace epsolve

#endif  // EPSOLVE_DIAGNOSTICS_HPP
