#include <benchmark/benchmark.h>

#include "apsc/catalog.hpp"
#include "apsc/expr.hpp"
#include "apsc/jet.hpp"

using namespace apsc;

static void BM_PathJet(benchmark::State& state, const char* model) {
  const EnergyModel m = find_model(model);
  double r = 0.1;
  for (auto _ : state) {
    const Jet2 w = m.shear_path(Jet2::variable(r, 0, 1));
    benchmark::DoNotOptimize(w.d2(0, 0));
    r = r < 9.0 ? r + 0.01 : 0.1;
  }
}
BENCHMARK_CAPTURE(BM_PathJet, neo_hooke, "neo-hooke");
BENCHMARK_CAPTURE(BM_PathJet, veronda_westman, "veronda-westman");
BENCHMARK_CAPTURE(BM_PathJet, hencky, "hencky");

static void BM_InvariantJet(benchmark::State& state) {
  const EnergyModel m = find_model("mooney-rivlin");
  for (auto _ : state) benchmark::DoNotOptimize(m.invariant_jet({4.0, 3.5, 1.2}));
}
BENCHMARK(BM_InvariantJet);

static void BM_DslParse(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(make_dsl_energy("mu/2*(I1-3) + exp((I2-3)/10) - 1 + (sqrt(I3)-1)^2", {{"mu", 1.0}}));
}
BENCHMARK(BM_DslParse);

static void BM_DslJet(benchmark::State& state) {
  const EnergyModel m =
      make_dsl_energy("mu/2*(I1-3) + exp((I2-3)/10) - 1 + (sqrt(I3)-1)^2", {{"mu", 1.0}});
  for (auto _ : state) benchmark::DoNotOptimize(m.invariant_jet({4.0, 3.5, 1.2}));
}
BENCHMARK(BM_DslJet);
