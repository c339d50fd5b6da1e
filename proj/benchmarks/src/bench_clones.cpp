#include <benchmark/benchmark.h>

#include "common.hpp"
#include "rankvote/clones.hpp"

using namespace rankvote;

static void BM_DetectCloneSets(benchmark::State& state) {
  const auto p = bench::profile(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(detect_clone_sets(p));
}
BENCHMARK(BM_DetectCloneSets)->Args({6, 3})->Args({12, 3})->Args({26, 3})->Args({12, 100});

static void BM_DetectPseudoClones(benchmark::State& state) {
  const auto p = bench::profile(state.range(0), 50);
  for (auto _ : state) benchmark::DoNotOptimize(detect_pseudo_clones(p));
}
BENCHMARK(BM_DetectPseudoClones)->Arg(6)->Arg(12);

static void BM_IsCloneSet(benchmark::State& state) {
  const auto base = bench::profile(state.range(0), 200);
  const auto p = clone_candidate(base, base.name(0), "a_clone", ClonePlacement::always(Placement::kBelow));
  const std::vector<Candidate> k{base.name(0), "a_clone"};
  for (auto _ : state) benchmark::DoNotOptimize(is_clone_set(p, k));
}
BENCHMARK(BM_IsCloneSet)->Arg(8)->Arg(26);
