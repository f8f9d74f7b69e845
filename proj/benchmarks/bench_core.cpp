#include <benchmark/benchmark.h>

#include "sierpfvm/scheme.hpp"
#include "sierpfvm/spectral.hpp"

using namespace sierpfvm;

namespace {

void BM_BuildCellGraph(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_cell_graph(3, m));
}
BENCHMARK(BM_BuildCellGraph)->Arg(4)->Arg(6)->Arg(8);

void BM_ExplicitStep(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  SchemeConfig config;
  config.T = cfl_max_h(3, m) * 0.5;
  config.N = 1;
  const SchemeMatrix M = assemble(3, m, config);
  std::vector<double> u(static_cast<std::size_t>(M.n()), 0.0);
  u[0] = 1.0;
  for (auto _ : state) {
    u = step_explicit(M, u);
    benchmark::DoNotOptimize(u.data());
  }
}
BENCHMARK(BM_ExplicitStep)->Arg(4)->Arg(5)->Arg(6);

void BM_ImplicitStep(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  SchemeConfig config;
  config.T = cfl_max_h(3, m) * 50.0;
  config.N = 1;
  config.scheme = Scheme::implicit_euler;
  const SchemeMatrix M = assemble(3, m, config);
  std::vector<double> u(static_cast<std::size_t>(M.n()), 0.0);
  u[0] = 1.0;
  for (auto _ : state) {
    u = step_implicit(M, u);
    benchmark::DoNotOptimize(u.data());
  }
}
BENCHMARK(BM_ImplicitStep)->Arg(4)->Arg(5);

void BM_DirectSpectrum(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const CellLaplacian L =
      build_cell_laplacian(build_cell_graph(3, m), BoundaryMode::neumann_cells);
  for (auto _ : state) benchmark::DoNotOptimize(direct_spectrum(L));
}
BENCHMARK(BM_DirectSpectrum)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
