#include <benchmark/benchmark.h>

#include <random>

#include "magnikit/barcode.hpp"
#include "magnikit/kernels.hpp"
#include "magnikit/metric.hpp"

using namespace magnikit;

namespace {

FiniteMetricSpace cloud(std::size_t n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> pts(n, std::vector<double>(2));
  for (auto& p : pts) p = {u(rng), u(rng)};
  return from_point_cloud(pts);
}

void BM_DiameterSerial(benchmark::State& state) {
  const FiniteMetricSpace x = cloud(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::signed_diameter_counts_serial(x));
}

void BM_DiameterOmp(benchmark::State& state) {
  const FiniteMetricSpace x = cloud(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::signed_diameter_counts_omp(x));
}

void BM_TuplesSerial(benchmark::State& state) {
  const FiniteMetricSpace x = cycle_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::enumerate_tuples_serial(x, 5, kInfinity, 50'000'000));
}

void BM_TuplesOmp(benchmark::State& state) {
  const FiniteMetricSpace x = cycle_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::enumerate_tuples_omp(x, 5, kInfinity, 50'000'000));
}

}  // namespace

BENCHMARK(BM_DiameterSerial)->DenseRange(14, 20, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DiameterOmp)->DenseRange(14, 20, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TuplesSerial)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TuplesOmp)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
