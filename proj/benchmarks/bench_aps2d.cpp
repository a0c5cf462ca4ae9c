#include <benchmark/benchmark.h>

#include "apsc/aps2d.hpp"
#include "apsc/boundary.hpp"
#include "apsc/catalog.hpp"

using namespace apsc;

static void BM_Solve2D(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const EnergyModel m = find_model("veronda-westman");
  SolverControls2D c;
  c.threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(solve({m, make_field(n, n, default_boundary()), c}));
}
BENCHMARK(BM_Solve2D)->Args({33, 1})->Args({65, 1})->Args({65, 4})->Unit(benchmark::kMillisecond);

static void BM_ReducedGradient(benchmark::State& state) {
  const EnergyModel m = find_model("mooney-rivlin");
  const ScalarField2D f = make_field(129, 129, default_boundary());
  for (auto _ : state) benchmark::DoNotOptimize(reduced_gradient(m, f));
}
BENCHMARK(BM_ReducedGradient)->Unit(benchmark::kMillisecond);
