#include <benchmark/benchmark.h>

#include "rankvote/impossibility.hpp"

using namespace rankvote;

static void BM_RealizeProfile(benchmark::State& state) {
  const auto t = PTemplate::tied_family(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(realize_profile(t));
}
BENCHMARK(BM_RealizeProfile)->DenseRange(4, 16, 4);

static void BM_Audit(benchmark::State& state) {
  const auto family = build_cloned_variants(realize_profile(PTemplate::tied_family(8)));
  const auto order = builtin_orders().front();
  for (auto _ : state) benchmark::DoNotOptimize(audit_schulze_protocol(order, family));
}
BENCHMARK(BM_Audit);
