#include <benchmark/benchmark.h>

#include "common.hpp"
#include "rankvote/clocked.hpp"
#include "rankvote/errors.hpp"

using namespace rankvote;

template <Protocol P>
static void BM_Protocol(benchmark::State& state) {
  const auto p = bench::profile(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(run_protocol(P, p, TiePolicy::kLexicographic));
}
BENCHMARK_TEMPLATE(BM_Protocol, Protocol::kStv)->Args({5, 15})->Args({10, 500});
BENCHMARK_TEMPLATE(BM_Protocol, Protocol::kRankedPairs)->Args({5, 15})->Args({10, 500});

static void BM_OiocSuite(benchmark::State& state) {
  SuiteOptions o;
  o.trials = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(run_oioc_suite(o, 20));
}
BENCHMARK(BM_OiocSuite)->Arg(50)->Unit(benchmark::kMillisecond);
