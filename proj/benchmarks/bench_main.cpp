#include <benchmark/benchmark.h>

#include "paincert/chain_tree.hpp"
#include "paincert/drift.hpp"
#include "paincert/equalise.hpp"
#include "paincert/philox.hpp"
#include "paincert/sweep.hpp"

using namespace paincert;

namespace {

const WTable& table() {
  static const WTable t = build_wtable(GridParams{});
  return t;
}

void BM_BuildTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_wtable(GridParams{static_cast<int>(state.range(0))}));
}
BENCHMARK(BM_BuildTable)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_Lookup(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    x += 0.6180339887;
    if (x >= 1.0) x -= 1.0;
    benchmark::DoNotOptimize(table().lookup(x));
  }
}
BENCHMARK(BM_Lookup);

void BM_Interpolate(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    x += 0.6180339887;
    if (x >= 1.0) x -= 1.0;
    benchmark::DoNotOptimize(table().interpolate(x));
  }
}
BENCHMARK(BM_Interpolate);

void BM_EqualiseCell(benchmark::State& state) {
  const DegreeConfig config(1, 2, 3, 4);
  int m = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(equalise(m, config, table()));
    m = m % 19999 + 1;
  }
}
BENCHMARK(BM_EqualiseCell)->Unit(benchmark::kMicrosecond);

void BM_DirectionWeights(benchmark::State& state) {
  const DegreeConfig config(1, 2, 3, 4);
  const auto cell = equalise(7000, config, table());
  for (auto _ : state) benchmark::DoNotOptimize(direction_weights(cell, config, table()));
}
BENCHMARK(BM_DirectionWeights);

void BM_SweepConfig(benchmark::State& state) {
  const WTable small = build_wtable(GridParams{static_cast<int>(state.range(0))});
  const DegreeConfig config(2, 3, 5, 7);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_config(config, small));
}
BENCHMARK(BM_SweepConfig)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Philox(benchmark::State& state) {
  PhiloxStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(rng());
}
BENCHMARK(BM_Philox);

void BM_ConfigSampler(benchmark::State& state) {
  const ConfigSampler sampler(solve_qhat());
  PhiloxStream rng(2, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.draw(rng.uniform()));
}
BENCHMARK(BM_ConfigSampler);

void BM_SampleAndClassify(benchmark::State& state) {
  std::uint64_t i = 0;
  for (auto _ : state) {
    PhiloxStream rng(3, i++);
    const auto tree = sample_tree(static_cast<int>(state.range(0)), rng);
    benchmark::DoNotOptimize(classify_terminating(tree));
  }
}
BENCHMARK(BM_SampleAndClassify)->Arg(4)->Arg(6)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
