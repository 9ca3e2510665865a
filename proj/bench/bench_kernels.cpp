#include <benchmark/benchmark.h>

#include <vector>

#include "regmatch/experiment.hpp"
#include "regmatch/sampling.hpp"

namespace {

std::vector<double> probabilities(std::size_t m) {
  std::vector<double> p(m);
  for (std::size_t i = 0; i < m; ++i) p[i] = static_cast<double>(i % 101) / 101.0;
  return p;
}

void BM_BernoulliFilter(benchmark::State& state) {
  const auto p = probabilities(static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(regmatch::bernoulli_filter(p, seed++));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BernoulliFilterSerial(benchmark::State& state) {
  const auto p = probabilities(static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(regmatch::bernoulli_filter_serial(p, seed++));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

regmatch::ExperimentConfig experiment(int trials) {
  regmatch::ExperimentConfig cfg;
  cfg.grid = {{64, 16}, {128, 32}, {128, 64}};
  cfg.trials = trials;
  cfg.pipeline.mode = regmatch::Mode::kSampled;
  return cfg;
}

void BM_Experiment(benchmark::State& state) {
  const auto cfg = experiment(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(regmatch::run_experiment(cfg));
}

void BM_ExperimentSerial(benchmark::State& state) {
  const auto cfg = experiment(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(regmatch::run_experiment_serial(cfg));
}

}  // namespace

BENCHMARK(BM_BernoulliFilter)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_BernoulliFilterSerial)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_Experiment)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExperimentSerial)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
