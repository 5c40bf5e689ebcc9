// Production step (assembled stencil, red-black solve, OpenMP kernels)
// against the serial matrix-free reference step, on the same states.

#include <benchmark/benchmark.h>

#include "reference_step.hpp"
#include "rsw/cases.hpp"
#include "rsw/linear.hpp"
#include "rsw/scheme.hpp"

namespace {

rsw::Setup setup_for(int n) {
  rsw::CaseOverrides ov;
  ov.nx = n;
  return rsw::build_case("geostrophic_adjustment", ov);
}

void BM_AdvanceParallel(benchmark::State& st) {
  const rsw::Setup s = setup_for(static_cast<int>(st.range(0)));
  const double dt = rsw::compute_dt(s.state, s.problem);
  for (auto _ : st) {
    auto out = rsw::advance(s.state, s.problem, dt);
    benchmark::DoNotOptimize(out.first.h.values().data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(s.problem.grid.cells()));
}

void BM_AdvanceReference(benchmark::State& st) {
  const rsw::Setup s = setup_for(static_cast<int>(st.range(0)));
  const double dt = rsw::compute_dt(s.state, s.problem);
  for (auto _ : st) {
    auto out = rsw::reference::step(s.state, s.problem, dt, 1e-13);
    benchmark::DoNotOptimize(out.h.values().data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(s.problem.grid.cells()));
}

void BM_Assemble(benchmark::State& st) {
  const rsw::Setup s = setup_for(static_cast<int>(st.range(0)));
  const double dt = rsw::compute_dt(s.state, s.problem);
  for (auto _ : st) {
    auto sys = rsw::assemble_phi_system(s.state, s.problem, dt);
    benchmark::DoNotOptimize(sys.rhs.data());
  }
}

void BM_Solve(benchmark::State& st) {
  const rsw::Setup s = setup_for(static_cast<int>(st.range(0)));
  const double dt = rsw::compute_dt(s.state, s.problem);
  const auto sys = rsw::assemble_phi_system(s.state, s.problem, dt);
  const auto phi0 = rsw::potential(s.state, s.problem.bath, s.problem.params.g);
  for (auto _ : st) {
    auto res = rsw::solve(sys, phi0.values());
    benchmark::DoNotOptimize(res.x.data());
  }
}

} // namespace

BENCHMARK(BM_AdvanceParallel)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AdvanceReference)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Assemble)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Solve)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
