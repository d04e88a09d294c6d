#include <benchmark/benchmark.h>

#include "critgrass/harness.hpp"
#include "critgrass/sampling.hpp"

using namespace critgrass;

static void BM_Strata(benchmark::State& state) {
  Exec exec = state.range(0) ? Exec::Parallel : Exec::Serial;
  BAP f = top_cell(2, 4);
  auto faces = all_faces(f);
  for (auto _ : state) benchmark::DoNotOptimize(strata_sample(f, faces, 2, 0, exec).groups);
  state.SetLabel(exec == Exec::Parallel ? "parallel" : "serial");
}
BENCHMARK(BM_Strata)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_Iir(benchmark::State& state) {
  SuiteConfig cfg;
  cfg.k = 3;
  cfg.n = 6;
  cfg.samples = 50;
  cfg.exec = state.range(0) ? Exec::Parallel : Exec::Serial;
  for (auto _ : state) benchmark::DoNotOptimize(run_suite("iir", cfg).pass());
  state.SetLabel(cfg.exec == Exec::Parallel ? "parallel" : "serial");
}
BENCHMARK(BM_Iir)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
