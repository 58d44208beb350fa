#include <benchmark/benchmark.h>

#include <random>

#include "epsolve/dense.hpp"
#include "epsolve/problems.hpp"
#include "epsolve/sparse.hpp"

using namespace epsolve;

namespace {

DenseMatrix random_hessenberg(std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  DenseMatrix h(k + 1, k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i <= j; ++i) h(i, j) = val(rng);
    h(j + 1, j) = std::abs(val(rng));
  }
  return h;
}

}  // namespace

static void BM_MatvecConvdiff(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto a = gen_periodic_convdiff({m, 1.0});
  Vector x(a.n(), 1.0);
  for (auto _ : state) {
    Vector y = matvec(a, x);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(a.nnz()));
}
BENCHMARK(BM_MatvecConvdiff)->Arg(50)->Arg(100);

static void BM_MatvecTransposeConvdiff(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto a = gen_periodic_convdiff({m, 1.0});
  Vector x(a.n(), 1.0);
  for (auto _ : state) {
    Vector y = matvec_transpose(a, x);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(a.nnz()));
}
BENCHMARK(BM_MatvecTransposeConvdiff)->Arg(50)->Arg(100);

static void BM_JacobiSvd(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const DenseMatrix h = random_hessenberg(k, 42);
  for (auto _ : state) {
    SvdResult f = svd(h);
    benchmark::DoNotOptimize(f.sigma.data());
  }
}
BENCHMARK(BM_JacobiSvd)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_PinvTruncated(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const DenseMatrix h = random_hessenberg(k, 42);
  const double tol = default_tol(h);
  for (auto _ : state) {
    DenseMatrix p = pinv_truncated(h, tol);
    benchmark::DoNotOptimize(p.col_data(0));
  }
}
BENCHMARK(BM_PinvTruncated)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);
