#include <benchmark/benchmark.h>

#include "apsc/boundary.hpp"
#include "apsc/catalog.hpp"
#include "apsc/fem3d.hpp"

using namespace apsc;

static void BM_AssembleEnergy(benchmark::State& state) {
  const HexMesh mesh = make_unit_cube(static_cast<int>(state.range(0)));
  const Displacement3D d = aps_dirichlet(mesh, default_boundary());
  const EnergyModel m = find_model("mooney-rivlin");
  for (auto _ : state) benchmark::DoNotOptimize(assemble_energy(mesh, d, m, 1));
}
BENCHMARK(BM_AssembleEnergy)->Arg(9)->Arg(17)->Unit(benchmark::kMillisecond);

static void BM_Minimize(benchmark::State& state, const char* model, bool qi) {
  const HexMesh mesh = make_unit_cube(9);
  const EnergyModel base = find_model(model);
  const EnergyModel m = qi ? quasi_incompressible(base) : base;
  for (auto _ : state) benchmark::DoNotOptimize(minimize(mesh, m, default_boundary()));
}
BENCHMARK_CAPTURE(BM_Minimize, blatz_ko, "blatz-ko", false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Minimize, qi_mooney_rivlin, "mooney-rivlin", true)->Unit(benchmark::kMillisecond);
