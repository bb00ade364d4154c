// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "predsearch/experiment.hpp"
#include "predsearch/instances.hpp"
#include "predsearch/metric.hpp"
#include "predsearch/planner.hpp"

namespace {

using namespace predsearch;

Instance bench_grid(int side) { return gen_grid(side, side, 5, side, 7); }

void BM_AllPairsSerial(benchmark::State& state) {
  const Instance inst = bench_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(all_pairs_distances_serial(inst.graph));
  state.SetComplexityN(inst.graph.size());
}

void BM_AllPairsParallel(benchmark::State& state) {
  const Instance inst = bench_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(all_pairs_distances(inst.graph));
  state.SetComplexityN(inst.graph.size());
}

void BM_ImpliedErrorSerial(benchmark::State& state) {
  const Instance inst = bench_grid(static_cast<int>(state.range(0)));
  const DistanceMatrix dist = all_pairs_distances(inst.graph);
  for (auto _ : state) benchmark::DoNotOptimize(implied_error_serial(inst, ErrorMode::kL1, dist));
}

void BM_ImpliedErrorParallel(benchmark::State& state) {
  const Instance inst = bench_grid(static_cast<int>(state.range(0)));
  const DistanceMatrix dist = all_pairs_distances(inst.graph);
  for (auto _ : state) benchmark::DoNotOptimize(implied_error(inst, ErrorMode::kL1, dist));
}

ExperimentConfig sweep_config(std::int64_t reps) {
  ExperimentConfig c;
  c.algorithms = {"known-dist", "treex"};
  c.spec.family = "random-tree";
  c.n_values = {500};
  c.delta_values = {4};
  c.k_values = {0, 10, 50};
  c.reps = reps;
  return c;
}

void BM_SweepSerial(benchmark::State& state) {
  const ExperimentConfig c = sweep_config(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(c, Execution::kSerial));
}

void BM_SweepParallel(benchmark::State& state) {
  const ExperimentConfig c = sweep_config(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(c, Execution::kParallel));
}

}  // namespace

BENCHMARK(BM_AllPairsSerial)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AllPairsParallel)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ImpliedErrorSerial)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ImpliedErrorParallel)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
