#include <benchmark/benchmark.h>

#include <random>

#include "twb/koszul.hpp"

using namespace twb;

static void BM_HomBasisUnwalled(benchmark::State& state) {
  CatTag t{Shape::ub, true, {1, -1}};
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hom_basis(t, {2, 0}, {n, 0}).size());
}
BENCHMARK(BM_HomBasisUnwalled)->DenseRange(4, 8, 2);

static void BM_HomBasisWalled(benchmark::State& state) {
  CatTag t{Shape::uwb, true, {1, 1}};
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hom_basis(t, {1, 1}, {n, n}).size());
}
BENCHMARK(BM_HomBasisWalled)->DenseRange(2, 5);

static void BM_PowerModuleAssoc(benchmark::State& state) {
  CyclicOperadData c = builtin_assoc_cyclic(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(power_module_cyclic(c, Parity::exterior).levels.size());
}
BENCHMARK(BM_PowerModuleAssoc)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

static void BM_SecondComplexCom(benchmark::State& state) {
  int N = static_cast<int>(state.range(0));
  DownModule m = power_module_cyclic(builtin_com_cyclic(N), Parity::symmetric);
  for (auto _ : state) {
    KoszulComplex k = build_second(m, {2, 0}, N);
    benchmark::DoNotOptimize(homology(k).rows.size());
  }
}
BENCHMARK(BM_SecondComplexCom)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_SparseRank(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(5);
  SparseMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::pair<std::uint32_t, Scalar>> col;
    for (int k = 0; k < 4; ++k) col.emplace_back(static_cast<std::uint32_t>(rng() % n), Scalar(int(rng() % 7) - 3));
    m.set_col(j, sparse_from_unsorted(std::move(col)));
  }
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_SparseRank)->RangeMultiplier(4)->Range(64, 1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
