#include <benchmark/benchmark.h>

#include <vector>

#include "plinar/distances.hpp"
#include "plinar/forecast.hpp"
#include "plinar/process.hpp"

namespace {

std::vector<plinar::GridPoint> theta_sweep_points() {
  std::vector<plinar::GridPoint> pts;
  for (double t : plinar::theta_grid())
    for (int x : {0, 15, 30}) pts.push_back({0.9, t, x});
  return pts;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto pts = theta_sweep_points();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        plinar::evaluate_points(pts, 1, plinar::kDefaultTail, plinar::Execution::serial));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size()));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto pts = theta_sweep_points();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        plinar::evaluate_points(pts, 1, plinar::kDefaultTail, plinar::Execution::parallel));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size()));
}

void BM_ForecastDistribution(benchmark::State& state) {
  const plinar::PLINARParams params(0.5, 2.0);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(plinar::forecast_distribution(k, 15, params));
}

void BM_SimulateReplicates(benchmark::State& state) {
  const plinar::PLINARParams params(0.5, 2.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(plinar::simulate_replicates(64, 5000, params, 1));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ForecastDistribution)->Arg(1)->Arg(10)->Arg(100);
BENCHMARK(BM_SimulateReplicates)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
