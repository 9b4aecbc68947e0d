// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include "tsflow/kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

using namespace tsflow::kernels;

namespace {

std::vector<double> noise(std::size_t n) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> dist;
  std::vector<double> x(n);
  for (auto &v : x) v = dist(rng);
  return x;
}

std::vector<double> grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

template <auto Kernel> void BM_Autocovariance(benchmark::State &state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)));
  const std::size_t lags = x.size() / 4;
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(x, 0.0, lags));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.size() * lags));
}

template <auto Kernel> void BM_DftPower(benchmark::State &state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(x));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.size() * x.size() / 2));
}

template <auto Kernel> void BM_EtsGrid(benchmark::State &state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)));
  const auto alphas = grid(0.01, 0.99, 99);
  const auto betas = grid(0.01, 0.99, 99);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(x, alphas, betas));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.size() * alphas.size() * betas.size()));
}

} // namespace

BENCHMARK(BM_Autocovariance<autocovariance_serial>)->Name("autocovariance/serial")->Arg(1 << 10)->Arg(1 << 13);
BENCHMARK(BM_Autocovariance<autocovariance_omp>)->Name("autocovariance/omp")->Arg(1 << 10)->Arg(1 << 13);
BENCHMARK(BM_DftPower<dft_power_serial>)->Name("dft_power/serial")->Arg(1 << 10)->Arg(1 << 12);
BENCHMARK(BM_DftPower<dft_power_omp>)->Name("dft_power/omp")->Arg(1 << 10)->Arg(1 << 12);
BENCHMARK(BM_EtsGrid<ets_sse_grid_serial>)->Name("ets_grid/serial")->Arg(200)->Arg(2000);
BENCHMARK(BM_EtsGrid<ets_sse_grid_omp>)->Name("ets_grid/omp")->Arg(200)->Arg(2000);

BENCHMARK_MAIN();
