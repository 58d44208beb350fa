#include <benchmark/benchmark.h>

#include "epsolve/arnoldi.hpp"
#include "epsolve/problems.hpp"
#include "epsolve/solvers.hpp"

using namespace epsolve;

static void BM_ArnoldiSteps(benchmark::State& state) {
  const bool reorth = state.range(0) != 0;
  const auto a = gen_periodic_convdiff({50, 1.0});  // n = 2500
  const Vector b = gen_rhs_convdiff({50, 1.0});
  for (auto _ : state) {
    auto st = arnoldi_start(b);
    for (int j = 0; j < 30; ++j) arnoldi_step(*st, a, reorth);
    benchmark::DoNotOptimize(st->h_cols.data());
  }
}
BENCHMARK(BM_ArnoldiSteps)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_SolveDesk(benchmark::State& state) {
  const Method method = state.range(0) == 0 ? Method::gmres : Method::gmres_pinv;
  PeriodicConvDiffSpec spec{12, 1.0};  // n = 144
  const auto a = gen_periodic_convdiff(spec);
  const Vector b = gen_rhs_convdiff(spec);
  SolveConfig cfg;
  cfg.method = method;
  cfg.max_iter = 120;
  cfg.reorth = true;
  for (auto _ : state) {
    SolveResult res = solve(a, b, cfg);
    benchmark::DoNotOptimize(res.x.data());
  }
}
BENCHMARK(BM_SolveDesk)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_MinresSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<SparseMatrix::Triplet> t;
  for (std::size_t i = 0; i < n; ++i) {
    t.push_back({i, i, 2.0});
    if (i + 1 < n) {
      t.push_back({i, i + 1, -1.0});
      t.push_back({i + 1, i, -1.0});
    }
  }
  const auto a = SparseMatrix::from_triplets(n, std::move(t));
  const Vector b(n, 1.0);
  SolveConfig cfg;
  cfg.method = Method::minres;
  cfg.max_iter = 100;
  cfg.record_svd_every = 101;
  for (auto _ : state) {
    SolveResult res = solve(a, b, cfg);
    benchmark::DoNotOptimize(res.x.data());
  }
}
BENCHMARK(BM_MinresSolve)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
