// Serial reference against the OpenMP kernels on the acceptance-sized sweeps.
// Memo tables are warm after the first iteration, so the numbers measure the
// checks rather than enumeration.

#include <benchmark/benchmark.h>

#include "thetakit/oracles.hpp"
#include "thetakit/sweeps.hpp"

using namespace thetakit;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

void BM_Factorization(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(factorization_sweep(2, 5, exec_of(state)));
  label(state);
}

void BM_ActSegal(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(act_segal_sweep(2, 7, exec_of(state)));
  label(state);
}

void BM_Cofinality(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cofinality_contractible_sweep(2, 6, exec_of(state)));
  label(state);
}

void BM_Contractibility(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(contractibility_sweep(3, 7, exec_of(state)));
  label(state);
}

void BM_UnitComparison(benchmark::State& state) {
  std::vector<GlobularSet> sets;
  for (const auto& data : oracle::enumerate_globular_sets({2, 2, 2})) sets.push_back(make_globular_set(data));
  for (auto _ : state) benchmark::DoNotOptimize(unit_comparison_sweep(sets, {1, 2}, 5, exec_of(state)));
  label(state);
}

void BM_FreeCategory(benchmark::State& state) {
  std::vector<GlobularSet> graphs;
  for (const auto& data : oracle::enumerate_globular_sets({3, 2})) graphs.push_back(make_globular_set(data));
  for (auto _ : state) benchmark::DoNotOptimize(free_category_sweep(graphs, 3, exec_of(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_Factorization)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ActSegal)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Cofinality)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Contractibility)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UnitComparison)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FreeCategory)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
