#ifndef EPSOLVE_PROBLEMS_HPP
#define EPSOLVE_PROBLEMS_HPP

#include <cstddef>
#include <cstdint>

#include "epsolve/sparse.hpp"
#include "epsolve/vec.hpp"

namespace epsolve {

/// Periodic convection-diffusion on the unit square: m x m mesh, spacing
/// h = 1/m, n = m^2 unknowns ordered row-major over the (x1, x2) grid
/// indices (node (i1, i2) -> i1 * m + i2).
struct PeriodicConvDiffSpec {
  std::size_t m = 100;  // mesh points per side; >= 3 for the matrix
  double d = 1.0;       // convection coefficient along x1
};

/// Second-order centered differences with periodic wraparound in both
/// directions: diagonal -4/h^2, x2 neighbors 1/h^2, x1 neighbors
/// 1/h^2 +- d/(2h). Row and column sums vanish, so ones spans the
/// nullspace of both A and A^T and A is range symmetric for every d.
SparseMatrix gen_periodic_convdiff(const PeriodicConvDiffSpec& spec);

/// Grid sampling of x1 + x2 (node values i1 h + i2 h). Its component along
/// ones is positive, so the pair (A, b) is inconsistent. Accepts m >= 2.
Vector gen_rhs_convdiff(const PeriodicConvDiffSpec& spec);

/// Right-hand side A*ones/||A*ones|| + scale * v with v a unit vector
/// close to the nullspace: either supplied directly or computed as the
/// eigenvector of the smallest-magnitude eigenvalue.
struct InconsistentRhsSpec {
  double perturbation_scale = 0.01;
  enum class NullVectorSource { analytic, smallest_eigenvector };
  NullVectorSource source = NullVectorSource::smallest_eigenvector;
  Vector analytic_vector;   // used when source == analytic
  std::uint64_t seed = 1;   // start vector for the eigenvector iteration
};

/// Throws contract_error when A*ones = 0 (the consistent part degenerates;
/// the caller must supply a different consistent component). Requires
/// symmetric A for the smallest_eigenvector source.
Vector build_inconsistent_rhs(const SparseMatrix& a, const InconsistentRhsSpec& spec);

/// Unit eigenvector for the smallest-magnitude eigenvalue by inverse
/// iteration with shift 0 over a dense LU (restricted to n <= 2000);
/// iterates until ||A v - lambda v||_2 <= 1e-8.
Vector smallest_eigenvector(const SparseMatrix& a, std::uint64_t seed);

}  // namespace epsolve

#endif  // EPSOLVE_PROBLEMS_HPP
