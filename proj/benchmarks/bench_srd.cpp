// Microbenchmarks for the per-step kernels on the cylinder mesh.

#include <benchmark/benchmark.h>

#include "cutsrd/mesh.hpp"
#include "cutsrd/problems.hpp"
#include "cutsrd/scheme.hpp"
#include "cutsrd/srd.hpp"

namespace {

using namespace cutsrd;

struct Setup {
  explicit Setup(int n)
      : spec(cylinder_problem(n, n)),
        mesh(generate_mesh(BaseGrid::make(spec.lo, spec.hi, n, n), spec.geometry)),
        plan(build_plan(mesh)),
        U(init_field(mesh, spec)) {}
  ProblemSpec spec;
  CutCellMesh mesh;
  SrdPlan plan;
  StateField U;
};

void BM_GenerateMesh(benchmark::State& state) {
  const ProblemSpec spec = cylinder_problem(state.range(0), state.range(0));
  const BaseGrid grid = BaseGrid::make(spec.lo, spec.hi, spec.nx, spec.ny);
  for (auto _ : state) benchmark::DoNotOptimize(generate_mesh(grid, spec.geometry));
}
BENCHMARK(BM_GenerateMesh)->Arg(64)->Arg(151)->Unit(benchmark::kMillisecond);

void BM_BuildPlan(benchmark::State& state) {
  const Setup s(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_plan(s.mesh));
}
BENCHMARK(BM_BuildPlan)->Arg(64)->Arg(151)->Unit(benchmark::kMillisecond);

void BM_ApplySrd(benchmark::State& state) {
  const Setup s(state.range(0));
  const Redistributor r(s.plan, GradientMode::SecondOrderQuadratic, true);
  StateField U = s.U;
  for (auto _ : state) {
    r.apply(U);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_ApplySrd)->Arg(64)->Arg(151)->Unit(benchmark::kMicrosecond);

void BM_Residual(benchmark::State& state) {
  Setup s(state.range(0));
  MolSolver<EulerPhysics> solver(s.mesh, &s.plan, EulerPhysics{1.4}, s.spec.bc,
                                 GradientMode::SecondOrderQuadratic, true);
  StateField dudt;
  for (auto _ : state) {
    solver.residual(s.U, 0.0, dudt);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_Residual)->Arg(64)->Arg(151)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
