#include <benchmark/benchmark.h>

#include <map>

#include "ctmhd/ct.hpp"
#include "ctmhd/problems.hpp"

namespace {

using namespace ctmhd;

const ProblemSetup& setup(int n) {
  static std::map<int, ProblemSetup> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, orszag_tang_init(orszag_tang_grid(n))).first;
  return it->second;
}

template <bool Parallel>
void BM_mhd_step(benchmark::State& state) {
  const ProblemSetup& s = setup(int(state.range(0)));
  const CtState st = initial_state(s);
  FvOptions opt;
  const double dt = suggest_dt(st.q, 0.8, opt.gamma);
  for (auto _ : state) {
    FvResult r = Parallel ? mhd_step(st.q, dt, s.q_bc, opt) : mhd_step_reference(st.q, dt, s.q_bc, opt);
    benchmark::DoNotOptimize(r.qstar.values().data());
  }
  state.SetItemsProcessed(state.iterations() * s.grid.cells());
}

template <bool Parallel>
void BM_strang_step(benchmark::State& state) {
  const ProblemSetup& s = setup(int(state.range(0)));
  const CtState st = initial_state(s);
  const VelocityField u = half_time_velocity(st.q, st.q);
  PotentialOptions opt;
  opt.diffusion.nu = 0.05;
  const double dt = 0.8 * s.grid.min_spacing() / 3.0;
  for (auto _ : state) {
    PotentialField a = st.A;
    if (Parallel)
      a = strang_step(a, u, dt, opt, s.a_bc);
    else
      a = strang_step_reference(a, u, dt, opt, s.a_bc);
    benchmark::DoNotOptimize(a.a.values().data());
  }
  state.SetItemsProcessed(state.iterations() * s.grid.cells());
}

}  // namespace

BENCHMARK(BM_mhd_step<false>)->Name("mhd_step/serial")->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mhd_step<true>)->Name("mhd_step/openmp")->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_strang_step<false>)->Name("strang_step/serial")->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_strang_step<true>)->Name("strang_step/openmp")->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
