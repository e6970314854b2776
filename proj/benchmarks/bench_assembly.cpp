#include <benchmark/benchmark.h>

#include "hdg/manufactured.hpp"

namespace {

using namespace hdg;

void BM_LocalA(benchmark::State& state) {
  const Mesh mesh = mesh_for_level(2);
  MethodParams p;
  p.k = static_cast<int>(state.range(0));
  const DiscreteSpaces spaces(mesh, p.k, p.pressure_order());
  int K = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(local_a(spaces, K, p));
    K = (K + 1) % mesh.num_elements();
  }
}
BENCHMARK(BM_LocalA)->Arg(1)->Arg(2);

void BM_Assemble(benchmark::State& state) {
  const Mesh mesh = mesh_for_level(static_cast<int>(state.range(0)));
  const MethodParams p;
  const DiscreteSpaces spaces(mesh, p.k, p.pressure_order());
  const CurlSolution exact;
  const VectorField f = exact.forcing_field(p.nu);
  const BoundaryData g = exact.normal_stress_field(p.nu);
  for (auto _ : state) benchmark::DoNotOptimize(assemble(spaces, p, f, g));
  state.counters["dofs"] = spaces.layout().total();
}
BENCHMARK(BM_Assemble)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  const Mesh mesh = mesh_for_level(static_cast<int>(state.range(0)));
  const MethodParams p;
  const DiscreteSpaces spaces(mesh, p.k, p.pressure_order());
  const CurlSolution exact;
  const GlobalSystem sys = assemble(spaces, p, exact.forcing_field(p.nu), exact.normal_stress_field(p.nu));
  for (auto _ : state) benchmark::DoNotOptimize(solve(sys, spaces));
  state.counters["dofs"] = sys.size();
}
BENCHMARK(BM_Solve)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_Errors(benchmark::State& state) {
  const Mesh mesh = mesh_for_level(static_cast<int>(state.range(0)));
  const MethodParams p;
  const DiscreteSpaces spaces(mesh, p.k, p.pressure_order());
  const CurlSolution exact;
  const SolutionFields sol =
      solve(assemble(spaces, p, exact.forcing_field(p.nu), exact.normal_stress_field(p.nu)), spaces);
  for (auto _ : state) benchmark::DoNotOptimize(compute_errors(spaces, sol, exact, p));
}
BENCHMARK(BM_Errors)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
