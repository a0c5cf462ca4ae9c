#include <benchmark/benchmark.h>

#include "apsc/catalog.hpp"
#include "apsc/conditions.hpp"
#include "apsc/table1.hpp"

using namespace apsc;

static void BM_Aps2(benchmark::State& state) {
  const EnergyModel m = find_model("mooney-rivlin");
  const RGrid g = default_grid();
  for (auto _ : state) benchmark::DoNotOptimize(check_aps2(m, g));
}
BENCHMARK(BM_Aps2);

static void BM_AllChecks(benchmark::State& state) {
  const EnergyModel m = find_model("blatz-ko");
  for (auto _ : state) benchmark::DoNotOptimize(run_all_checks(m));
}
BENCHMARK(BM_AllChecks)->Unit(benchmark::kMillisecond);

static void BM_Table1(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(table1());
}
BENCHMARK(BM_Table1)->Unit(benchmark::kMillisecond);

static void BM_AlphaBisect(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(alpha_threshold_bisect(1.0));
}
BENCHMARK(BM_AlphaBisect)->Unit(benchmark::kMillisecond);
