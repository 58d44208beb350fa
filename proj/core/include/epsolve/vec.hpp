#ifndef EPSOLVE_VEC_HPP
#define EPSOLVE_VEC_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace epsolve {

using Vector = std::vector<double>;

inline double dot(const Vector& x, const Vector& y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

inline double norm2(const Vector& x) { return std::sqrt(dot(x, x)); }

/// y += a * x
inline void axpy(double a, const Vector& x, Vector& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

inline void scale(Vector& x, double a) {
  for (double& v : x) v *= a;
}

}  // namespace epsolve

#endif  // EPSOLVE_VEC_HPP
