#include <benchmark/benchmark.h>

#include <algorithm>

#include "cgra/dse.hpp"
#include "cgra/fabric.hpp"

namespace {

cgra::Dfg random_dfg(std::size_t ops) {
  cgra::GeneratorParams p;
  p.max_ops = std::max(p.max_ops, ops);
  return cgra::generate_random_dfg(p, ops, 42);
}

void BM_MapDfg(benchmark::State& state) {
  const auto dfg = random_dfg(static_cast<std::size_t>(state.range(0)));
  const auto dims = cgra::FabricDims::with_defaults(64, 8);
  for (auto _ : state) benchmark::DoNotOptimize(cgra::map_dfg(dfg, dims));
}
BENCHMARK(BM_MapDfg)->Arg(8)->Arg(32)->Arg(128);

void BM_RunScenario(benchmark::State& state) {
  cgra::GeneratorParams gp;
  gp.num_dfgs = 200;
  gp.trace_length = 400;
  auto w = std::make_shared<const cgra::Workload>(cgra::generate_random_workload(gp, 1));
  const cgra::Scenario s{"bench", cgra::FabricDims::with_defaults(16, 2),
                         cgra::AllocationPolicy::Rotating, w, {}};
  for (auto _ : state) benchmark::DoNotOptimize(cgra::run_scenario(s));
}
BENCHMARK(BM_RunScenario)->Unit(benchmark::kMillisecond);

void BM_Execute(benchmark::State& state) {
  const auto dims = cgra::FabricDims::with_defaults(32, 4);
  const auto vc = cgra::map_dfg(random_dfg(24), dims);
  const std::vector<std::uint32_t> inputs{1, 2, 3, 4};
  int k = 0;
  for (auto _ : state) {
    const cgra::Pivot p{k % dims.rows, k % dims.cols};
    benchmark::DoNotOptimize(cgra::execute(vc, p, inputs, {}, dims));
    ++k;
  }
}
BENCHMARK(BM_Execute);

}  // namespace

BENCHMARK_MAIN();
