// Command-line front end: configure a problem and a solver set, run, and
// emit per-iteration convergence histories as CSV/JSON plus optional SVG
// plots. Exit codes: 0 success, 1 numerical failure, 2 usage/IO error.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "epsolve/errors.hpp"
#include "epsolve/runner.hpp"
#include "epsolve/solvers.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Krylov solvers for range-symmetric singular and inconsistent systems"};

  std::string manifest_path;
  std::string problem;
  std::size_t m = 0;
  double d = 0.0;
  std::string matrix_path;
  std::string rhs_path;
  double perturbation = 0.0;
  std::vector<std::string> methods;
  std::size_t max_iter = 0;
  bool reorth = false;
  std::string tol;
  double atr_stop = 0.0;
  std::string out_dir;
  bool plots = false;
  std::size_t svd_every = 0;
  std::uint64_t seed = 0;

  app.add_option("--manifest", manifest_path,
                 "Manifest file with the same keys as the flags below");
  app.add_option("--problem", problem, "convdiff | matrix-market | matrix-market-rhs")
      ->check(CLI::IsMember({"convdiff", "matrix-market", "matrix-market-rhs"}));
  app.add_option("--m", m, "Mesh points per side for the generated problem");
  app.add_option("--d", d, "Convection coefficient for the generated problem");
  app.add_option("--matrix", matrix_path, "Matrix Market file (coordinate real)");
  app.add_option("--rhs", rhs_path, "Right-hand-side file for matrix-market-rhs");
  app.add_option("--perturbation", perturbation,
                 "Null-direction perturbation scale for matrix-market problems");
  app.add_option("--method", methods,
                 "Solvers to run: gmres, gmres_pinv, rrgmres, minres, rrminres")
      ->delimiter(',');
  app.add_option("--max-iter", max_iter, "Maximum iterations per solver");
  app.add_flag("--reorth", reorth, "Reorthogonalize the Arnoldi basis");
  app.add_option("--tol", tol, "Truncation tolerance: 'default' or a real");
  app.add_option("--atr-stop", atr_stop,
                 "Stop once ||A^T r||/||A^T b|| falls below this value");
  app.add_option("--out", out_dir, "Output directory for histories and plots");
  std::string export_matrix;
  app.add_option("--export-matrix", export_matrix,
                 "Also write the problem matrix in Matrix Market form");
  app.add_flag("--plots", plots, "Emit SVG convergence plots");
  app.add_option("--svd-every", svd_every, "Record SVD diagnostics every k iterations");
  app.add_option("--seed", seed, "Seed for the randomized eigenvector start");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    epsolve::RunManifest manifest;
    if (!manifest_path.empty()) manifest = epsolve::parse_manifest_file(manifest_path);

    if (app.count("--problem")) {
      if (problem == "convdiff")
        manifest.problem = epsolve::RunManifest::ProblemKind::generated_convdiff;
      else if (problem == "matrix-market")
        manifest.problem = epsolve::RunManifest::ProblemKind::matrix_market;
      else
        manifest.problem = epsolve::RunManifest::ProblemKind::matrix_market_with_rhs;
    }
    if (app.count("--m")) manifest.convdiff.m = m;
    if (app.count("--d")) manifest.convdiff.d = d;
    if (app.count("--matrix")) manifest.matrix_path = matrix_path;
    if (app.count("--rhs")) manifest.rhs_path = rhs_path;
    if (app.count("--perturbation")) manifest.perturbation = perturbation;
    if (app.count("--out")) manifest.output_dir = out_dir;
    if (app.count("--export-matrix")) manifest.export_matrix_path = export_matrix;
    if (app.count("--plots")) manifest.emit_plots = plots;
    if (app.count("--seed")) manifest.seed = seed;

    // per-solver settings apply to every listed method
    if (app.count("--method")) {
      epsolve::SolveConfig base =
          manifest.solvers.empty() ? epsolve::SolveConfig{} : manifest.solvers.front();
      manifest.solvers.clear();
      for (const std::string& name : methods) {
        base.method = epsolve::parse_method(name);
        manifest.solvers.push_back(base);
      }
    }
    for (epsolve::SolveConfig& cfg : manifest.solvers) {
      if (app.count("--max-iter")) cfg.max_iter = max_iter;
      if (app.count("--reorth")) cfg.reorth = reorth;
      if (app.count("--tol"))
        cfg.tol_policy = tol == "default"
                             ? epsolve::TolPolicy::numerical_rank()
                             : epsolve::TolPolicy::fixed(std::stod(tol));
      if (app.count("--atr-stop"))
        cfg.stop_rule = epsolve::StopRule::atr_threshold(atr_stop);
      if (app.count("--svd-every")) cfg.record_svd_every = svd_every;
    }

    return epsolve::run(manifest);
  } catch (const epsolve::numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
