// Row source assembly and a full short run, serial reference vs OpenMP.
// Arg 0 is L_max.

#include <cmath>
#include <random>

#include <benchmark/benchmark.h>

#include "nullwave/evolve.hpp"
#include "nullwave/kernels.hpp"

using namespace nullwave;

namespace {

NullGridSpec bench_grid(int L) {
  NullGridSpec g;
  g.h = 0.1;
  g.u_max = 20.0;
  g.v_max = 200.0;
  g.L_max = L;
  return g;
}

struct RowFixture {
  explicit RowFixture(int L) : ctx(bench_grid(L), true) {
    const int M = ctx.grid.n_modes();
    const int n = ctx.grid.Nv() + 1;
    cur = Row(M, n);
    next = Row(M, n);
    src = Row(M, n);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-1e-2, 1e-2);
    for (auto* r : {&cur, &next})
      for (double& x : r->raw()) x = d(rng);
  }
  KernelContext ctx;
  Row cur, next, src;
};

void BM_assemble_serial(benchmark::State& state) {
  RowFixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    assemble_row_serial(f.ctx, 0, f.cur, f.next, f.src);
    benchmark::DoNotOptimize(f.src.raw().data());
  }
  state.SetItemsProcessed(state.iterations() * f.ctx.grid.Nv());
}

void BM_assemble_omp(benchmark::State& state) {
  RowFixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    assemble_row_omp(f.ctx, 0, f.cur, f.next, f.src);
    benchmark::DoNotOptimize(f.src.raw().data());
  }
  state.SetItemsProcessed(state.iterations() * f.ctx.grid.Nv());
}

void BM_run(benchmark::State& state, bool parallel) {
  const NullGridSpec g = bench_grid(static_cast<int>(state.range(0)));
  InitialDataSpec d;
  d.psi.amplitude = 0.05;
  d.psi.modes = {{0, 0, 1.0}};
  if (g.L_max > 0) d.psi.modes.push_back({g.L_max, 0, 0.5});
  RunOptions o;
  o.parallel = parallel;
  for (auto _ : state) {
    auto r = run(g, d, {}, o);
    benchmark::DoNotOptimize(r.radiation.Phi.data());
  }
}

void BM_run_serial(benchmark::State& state) { BM_run(state, false); }
void BM_run_omp(benchmark::State& state) { BM_run(state, true); }

}  // namespace

BENCHMARK(BM_assemble_serial)->Arg(0)->Arg(2)->Arg(4);
BENCHMARK(BM_assemble_omp)->Arg(0)->Arg(2)->Arg(4);
BENCHMARK(BM_run_serial)->Arg(0)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_run_omp)->Arg(0)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
