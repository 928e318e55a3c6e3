#include <benchmark/benchmark.h>

#include "alfem/assembly.hpp"
#include "alfem/cut.hpp"
#include "alfem/cutfem.hpp"
#include "alfem/level_set.hpp"
#include "alfem/manufactured.hpp"
#include "alfem/robin.hpp"
#include "alfem/solver.hpp"

using namespace alfem;

namespace {

void BM_Stiffness(benchmark::State& state) {
  const Mesh m = build_structured_mesh(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_stiffness(m, 1.0));
}
BENCHMARK(BM_Stiffness)->RangeMultiplier(2)->Range(16, 256)->Unit(benchmark::kMillisecond);

void BM_NitscheSolve(benchmark::State& state) {
  const Mesh m = build_structured_mesh(static_cast<int>(state.range(0)));
  const ExactSolution e = sine_product();
  const SparseSystem s = assemble_dirichlet_nitsche(m, 1.0, 100.0, e.source(), e.u);
  for (auto _ : state) benchmark::DoNotOptimize(solve_linear(s));
}
BENCHMARK(BM_NitscheSolve)->RangeMultiplier(2)->Range(16, 256)->Unit(benchmark::kMillisecond);

void BM_ClassifyCut(benchmark::State& state) {
  const Mesh m = build_structured_mesh(static_cast<int>(state.range(0)));
  const LevelSet circle = LevelSet::circle({0.48, 0.53}, 0.29);
  for (auto _ : state) benchmark::DoNotOptimize(classify_cut(m, circle));
}
BENCHMARK(BM_ClassifyCut)->RangeMultiplier(2)->Range(16, 256)->Unit(benchmark::kMillisecond);

void BM_CutInterfaceAssembly(benchmark::State& state) {
  const Mesh m = build_structured_mesh(static_cast<int>(state.range(0)));
  const CutClassification cls = classify_cut(m, LevelSet::circle({0.48, 0.53}, 0.29));
  const ExactSolution e = sine_product();
  InterfaceData d;
  d.f = {e.source(), e.source()};
  d.outer.value = {e.u, e.u};
  d.outer.flux = {e.flux(1.0), e.flux(1.0)};
  for (auto _ : state)
    benchmark::DoNotOptimize(assemble_cut_interface(m, cls, d, WeightScheme::harmonic(), {0.1}));
}
BENCHMARK(BM_CutInterfaceAssembly)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
