#include <benchmark/benchmark.h>

#include "rotortree/analysis.hpp"
#include "rotortree/forcing.hpp"
#include "rotortree/kernels.hpp"
#include "rotortree/machines.hpp"

using namespace rotortree;

namespace {

void BM_KernelRows(benchmark::State& state) {
  const auto t = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    KernelTable table{TreeParams(3)};
    table.reserve(t);
    benchmark::DoNotOptimize(table.i(1, t | 1));
  }
}
BENCHMARK(BM_KernelRows)->Arg(100)->Arg(400)->Arg(1000);

void BM_IKernelClosed(benchmark::State& state) {
  TreeParams params(3);
  const auto x = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(i_kernel_closed(x, 3 * x, params));
}
BENCHMARK(BM_IKernelClosed)->Arg(10)->Arg(100)->Arg(1000);

void BM_TMax(benchmark::State& state) {
  TreeParams params(3);
  const auto x = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(t_max(x, params));
}
BENCHMARK(BM_TMax)->Arg(10)->Arg(200)->Arg(2000);

ProppConfig divergence_config(std::size_t T) {
  ForcingOptions options;
  options.mode = ForcingMode::AnalyticIncrement;
  auto [target, rotors] = divergence_target(make_divergence_spec(3, T));
  return synthesize(target, rotors, options).config;
}

void BM_ProppRun(benchmark::State& state) {
  const auto T = static_cast<std::size_t>(state.range(0));
  const ProppConfig config = divergence_config(T);
  RunOptions run;
  run.keep_history = false;
  run.watch = {Vertex::origin()};
  for (auto _ : state) benchmark::DoNotOptimize(propp_run(config, T, run).final_state().occupied());
  state.counters["chips"] = config.total_chips().get_d();
}
BENCHMARK(BM_ProppRun)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_LinearRun(benchmark::State& state) {
  const auto T = static_cast<std::size_t>(state.range(0));
  const ProppConfig config = divergence_config(8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(linear_run(LinearState(config.params(), config.chips()), T).masses().size());
  }
}
BENCHMARK(BM_LinearRun)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Synthesize(benchmark::State& state) {
  const auto T = static_cast<std::size_t>(state.range(0));
  const bool incremental = state.range(1) != 0;
  auto [target, rotors] = divergence_target(make_divergence_spec(3, T));
  ForcingOptions options;
  options.mode = incremental ? ForcingMode::AnalyticIncrement : ForcingMode::Resimulate;
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(target, rotors, options).placements.size());
}
BENCHMARK(BM_Synthesize)->Args({6, 0})->Args({6, 1})->Args({8, 1})->Unit(benchmark::kMillisecond);

void BM_Decompose(benchmark::State& state) {
  const std::size_t T = 8;
  const ProppConfig config = divergence_config(T);
  auto traj = propp_run(config, T, RunOptions{kDefaultOccupancyBudget, false, {}});
  KernelTable table(config.params());
  for (auto _ : state) benchmark::DoNotOptimize(decompose(traj, T, table).total);
}
BENCHMARK(BM_Decompose)->Unit(benchmark::kMillisecond);

void BM_DivergenceSeries(benchmark::State& state) {
  const auto max_T = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    DivergenceSeries series(3, max_T);
    benchmark::DoNotOptimize(series.discrepancy(max_T));
  }
}
BENCHMARK(BM_DivergenceSeries)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
