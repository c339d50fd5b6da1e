#include <benchmark/benchmark.h>

#include "common.hpp"
#include "rankvote/rules.hpp"

using namespace rankvote;

static void BM_Pairwise(benchmark::State& state) {
  const auto p = bench::profile(state.range(0), 1000);
  for (auto _ : state) benchmark::DoNotOptimize(pairwise_matrix(p));
}
BENCHMARK(BM_Pairwise)->RangeMultiplier(2)->Range(4, 16)->Arg(26);

static void BM_SchulzeStrengths(benchmark::State& state) {
  const auto pw = pairwise_matrix(bench::profile(state.range(0), 1000));
  for (auto _ : state) benchmark::DoNotOptimize(schulze_strengths(pw));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SchulzeStrengths)->DenseRange(4, 24, 4)->Complexity(benchmark::oNCubed);

template <Rule R>
static void BM_Tally(benchmark::State& state) {
  const auto p = bench::profile(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(tally(R, p, TiePolicy::kLexicographic));
}
BENCHMARK_TEMPLATE(BM_Tally, Rule::kPlurality)->Args({8, 1000});
BENCHMARK_TEMPLATE(BM_Tally, Rule::kBorda)->Args({8, 1000});
BENCHMARK_TEMPLATE(BM_Tally, Rule::kStv)->Args({8, 1000})->Args({16, 1000});
BENCHMARK_TEMPLATE(BM_Tally, Rule::kRankedPairs)->Args({8, 1000})->Args({16, 1000});
BENCHMARK_TEMPLATE(BM_Tally, Rule::kSchulze)->Args({8, 1000})->Args({16, 1000});
