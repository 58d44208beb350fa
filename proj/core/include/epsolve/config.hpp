#ifndef EPSOLVE_CONFIG_HPP
#define EPSOLVE_CONFIG_HPP

#include <cstddef>
#include <string>

namespace epsolve {

enum class Method { gmres, gmres_pinv, rrgmres, minres, rrminres };

std::string to_string(Method m);
Method parse_method(const std::string& name);

/// Truncation tolerance for the Hessenberg pseudoinverse solve:
/// the numerical-rank default max(m, n) * ulp(sigma_1), or a fixed value.
struct TolPolicy {
  enum class Kind { default_numerical_rank, fixed };
  Kind kind = Kind::default_numerical_rank;
  double fixed_value = 0.0;

  static TolPolicy numerical_rank() { return {}; }
  static TolPolicy fixed(double v) { return {Kind::fixed, v}; }
};

/// run_to_max mirrors fixed-length experiment runs; atr_threshold stops
/// once ||A^T r||/||A^T b|| falls at or below the threshold.
struct StopRule {
  enum class Kind { run_to_max, atr_threshold };
  Kind kind = Kind::run_to_max;
  double threshold = 0.0;

  static StopRule run_to_max() { return {}; }
  static StopRule atr_threshold(double t) { return {Kind::atr_threshold, t}; }
};

struct SolveConfig {
  Method method = Method::gmres;
  std::size_t max_iter = 100;
  bool reorth = false;
  TolPolicy tol_policy;
  StopRule stop_rule;
  std::size_t record_svd_every = 1;
};

enum class Termination { max_iter, threshold_met, breakdown, trivial };

std::string to_string(Termination t);

}  // namespace epsolve

#endif  // EPSOLVE_CONFIG_HPP
