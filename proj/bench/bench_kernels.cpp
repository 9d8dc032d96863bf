#include <benchmark/benchmark.h>

#include "mmsim/kernels.hpp"
#include "mmsim/models.hpp"
#include "mmsim/rng.hpp"

using namespace mmsim;

namespace {

const OutcomeSampler& spacelike_sampler() {
  static const OutcomeSampler sampler(local_joint(Phase{kPi / 2}, SeparationRegime::Spacelike));
  return sampler;
}

void BM_CountOutcomesSerial(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_outcomes_serial(spacelike_sampler(), derive_stream_key(42, 0), 0, n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CountOutcomesParallel(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_outcomes_parallel(spacelike_sampler(), derive_stream_key(42, 0), 0, n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_CountOutcomesSerial)->RangeMultiplier(10)->Range(1000, 10'000'000)->UseRealTime();
BENCHMARK(BM_CountOutcomesParallel)->RangeMultiplier(10)->Range(1000, 10'000'000)->UseRealTime();

BENCHMARK_MAIN();
