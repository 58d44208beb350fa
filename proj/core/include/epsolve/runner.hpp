#ifndef EPSOLVE_RUNNER_HPP
#define EPSOLVE_RUNNER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "epsolve/config.hpp"
#include "epsolve/problems.hpp"

namespace epsolve {

/// One end-to-end run: a problem, a list of solver configurations, and the
/// output artifacts to emit. Every field maps to a CLI flag of the same
/// name; a manifest file supplies defaults that flags override.
struct RunManifest {
  enum class ProblemKind { generated_convdiff, matrix_market, matrix_market_with_rhs };
  ProblemKind problem = ProblemKind::generated_convdiff;
  PeriodicConvDiffSpec convdiff;
  std::string matrix_path;
  std::string rhs_path;
  double perturbation = 0.01;
  std::vector<SolveConfig> solvers;
  std::string output_dir = ".";
  bool emit_plots = false;
  std::string export_matrix_path;  // write the operator in Matrix Market form
  std::uint64_t seed = 1;
};

/// Key-value manifest with INI-style sections ([problem], [solve],
/// [output]; sections are organizational, keys are global). Keys carry the
/// CLI flag names: problem, m, d, matrix, rhs, perturbation, method,
/// max-iter, reorth, tol, out, plots, svd-every, seed.
RunManifest parse_manifest_file(const std::string& path);

/// Runs every solver, writes <tag>__<method>.csv and .json (plus SVG plots
/// when enabled) into output_dir, and prints one summary line per solver.
/// Returns the process exit status: 0 on success (solver breakdown is
/// still success), 1 on numerical failure, 2 on usage or IO errors.
int run(const RunManifest& manifest);

}  // namespace epsolve

#endif  // EPSOLVE_RUNNER_HPP
