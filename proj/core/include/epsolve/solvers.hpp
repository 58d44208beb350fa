#ifndef EPSOLVE_SOLVERS_HPP
#define EPSOLVE_SOLVERS_HPP

#include "epsolve/config.hpp"
#include "epsolve/diagnostics.hpp"
#include "epsolve/sparse.hpp"
#include "epsolve/vec.hpp"

namespace epsolve {

/// Outcome of a run from x0 = 0. x is the iterate with the smallest
/// ||A^T r_k|| / ||A^T b|| over the run (the least-squares quality metric),
/// since the plain methods can diverge after their best iterate on
/// inconsistent problems.
struct SolveResult {
  Vector x;
  ConvergenceHistory history;
  Termination termination;
};

/// GMRES over K_k(A, b): Givens QR of the Hessenberg least-squares
/// problem, back substitution for y. Terminates with breakdown if the
/// triangular factor develops a zero diagonal.
SolveResult solve_gmres(const SparseMatrix& a, const Vector& b, const SolveConfig& cfg);

/// GMRES solving min ||beta e1 - H_{k+1,k} y|| through the truncated
/// pseudoinverse of the Hessenberg: singular values below the configured
/// tolerance are treated as zero, so ill-conditioning of H never aborts
/// the run.
SolveResult solve_gmres_pinv(const SparseMatrix& a, const Vector& b,
                             const SolveConfig& cfg);

/// GMRES over the shifted space K_k(A, A b): the projected problem is
/// min ||V_{k+1}^T b - H_{k+1,k} y||, whose objective differs from the
/// true residual norm by the constant component of b outside the basis.
SolveResult solve_rrgmres(const SparseMatrix& a, const Vector& b,
                          const SolveConfig& cfg);

/// MINRES: Lanczos three-term recurrence plus Givens, solution updated
/// through short-recurrence direction vectors. Requires symmetric A
/// (documented, not enforced).
SolveResult solve_minres(const SparseMatrix& a, const Vector& b, const SolveConfig& cfg);

/// MINRES over K_k(A, A b), with the projected right-hand side handled as
/// in solve_rrgmres.
SolveResult solve_rrminres(const SparseMatrix& a, const Vector& b,
                           const SolveConfig& cfg);

/// Dispatches on cfg.method.
SolveResult solve(const SparseMatrix& a, const Vector& b, const SolveConfig& cfg);

}  // namespace epsolve

#endif  // EPSOLVE_SOLVERS_HPP
