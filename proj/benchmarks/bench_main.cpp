#include <benchmark/benchmark.h>

#include "teichflow/analyzer.hpp"
#include "teichflow/field.hpp"
#include "teichflow/flow.hpp"
#include "teichflow/initial_data.hpp"

using namespace teichflow;

static void BM_Tension(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto u = random_sphere_field(CylinderGrid::finite(-5, 5, 2 * n, n), 1);
  for (auto _ : st) benchmark::DoNotOptimize(tension(u));
  st.SetItemsProcessed(st.iterations() * 2 * n * n);
}
BENCHMARK(BM_Tension)->Arg(32)->Arg(64)->Arg(128);

static void BM_Energy(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto u = random_sphere_field(CylinderGrid::finite(-5, 5, 2 * n, n), 2);
  for (auto _ : st) benchmark::DoNotOptimize(energy(u));
  st.SetItemsProcessed(st.iterations() * 2 * n * n);
}
BENCHMARK(BM_Energy)->Arg(32)->Arg(64)->Arg(128);

static void BM_TorusStep(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto grid = CylinderGrid::torus(0.7, 8.0, n, n);
  const auto s = FlowState::torus(random_sphere_field(grid, 3), {0.7, 8.0}, 1.0);
  const double dt = admissible_dt(s);
  for (auto _ : st) benchmark::DoNotOptimize(step(s, dt));
}
BENCHMARK(BM_TorusStep)->Arg(32)->Arg(64);

static void BM_Decompose(benchmark::State& st) {
  const auto grid = CylinderGrid::finite(-100, 100, 801, 32);
  const auto u = gaussian_bumps(grid, {{-40.0, 0.5}, {40.0, 0.5}});
  for (auto _ : st) benchmark::DoNotOptimize(decompose(u, 0.1, 10.0));
}
BENCHMARK(BM_Decompose);
BENCHMARK_MAIN();
