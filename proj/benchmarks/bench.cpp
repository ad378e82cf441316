// Microbenchmarks for the hot paths: pool construction, objective
// estimation, full selection, and one adaptive episode.
#include <benchmark/benchmark.h>

#include "revmax/adaptive.hpp"
#include "revmax/estimator.hpp"
#include "revmax/instance.hpp"
#include "revmax/nonadaptive.hpp"
#include "revmax/oracle.hpp"

using namespace revmax;

namespace {

Instance medium() {
  return generate_random_instance(50, 150, 0.05, 0.3, 0.5, 2.0, 10, 1, 2024);
}

void BM_BuildPool(benchmark::State& state) {
  Instance inst = medium();
  for (auto _ : state)
    benchmark::DoNotOptimize(build_pool(inst, state.range(0), 1));
}
BENCHMARK(BM_BuildPool)->Arg(1000)->Arg(10000);

void BM_EstimateRevenue(benchmark::State& state) {
  Instance inst = medium();
  SamplePool pool = build_pool(inst, state.range(0), 1);
  NodeSet seeds{0, 7, 21, 33, 42};
  for (auto _ : state) benchmark::DoNotOptimize(estimate_f_exp(pool, seeds));
}
BENCHMARK(BM_EstimateRevenue)->Arg(1000)->Arg(10000);

void BM_Select(benchmark::State& state) {
  Instance inst = medium();
  SamplePool pool = build_pool(inst, 1000, 1);
  PoolEvaluator eval(pool);
  for (auto _ : state) benchmark::DoNotOptimize(select(eval));
}
BENCHMARK(BM_Select)->Unit(benchmark::kMillisecond);

void BM_ExactSelect(benchmark::State& state) {
  // Eight fractional edges: 256 realizations, the exhaustive regime the
  // property suites run in.
  Instance inst = generate_random_instance(8, 8, 0.2, 0.8, 0.5, 2.0, 5, 1, 7);
  ExactEvaluator eval(inst);
  for (auto _ : state) benchmark::DoNotOptimize(select(eval));
}
BENCHMARK(BM_ExactSelect);

void BM_AdaptiveEpisode(benchmark::State& state) {
  Instance inst = medium();
  AdaptiveParams params = compute_params(inst, 64);
  Rng rng(5);
  std::uint64_t episode = 0;
  for (auto _ : state) {
    Realization hidden = sample_realization(inst, rng);
    benchmark::DoNotOptimize(run_pi1(inst, hidden, params, ++episode));
  }
}
BENCHMARK(BM_AdaptiveEpisode)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
