#include "mclab/chain.hpp"
#include "mclab/merging.hpp"
#include "mclab/singular_bounds.hpp"
#include "mclab/spectral.hpp"
#include "mclab/stability.hpp"
#include "mclab/zoo.hpp"

#include <benchmark/benchmark.h>

using namespace mclab;

static void BM_StationaryGth(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const auto pair = perturbed_stick_pair(N, 0.6, 0.4, 0.0, 0.0, 0.0);
  const auto k = compose(pair.q1, pair.q2);
  for (auto _ : state) benchmark::DoNotOptimize(stationary_measure(k));
}
BENCHMARK(BM_StationaryGth)->Arg(11)->Arg(41)->Arg(127);

static void BM_StepSigma(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const auto k = constant_rate_bd(N, 0.4, 0.3, 0.3);
  const auto mu = ProbMeasure::uniform(k.space());
  const auto next = push_forward(mu, k);
  for (auto _ : state) benchmark::DoNotOptimize(step_sigma(k, mu, next));
}
BENCHMARK(BM_StepSigma)->Arg(16)->Arg(64)->Arg(200);

static void BM_MergingTime(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const auto seq = random_constant_rate_sequence(N, 1.2, 2.0, 1);
  MergingOptions opt;
  opt.stop_when_reached = true;
  opt.with_bounds = false;
  for (auto _ : state) benchmark::DoNotOptimize(merging_time(seq, 0.25, Metric::relsup, 100000, opt));
}
BENCHMARK(BM_MergingTime)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_RatioEnvelope(benchmark::State& state) {
  const auto pair = perturbed_stick_pair(11, 0.6, 0.4, 0.0, 0.0, 0.0);
  const auto u = ProbMeasure::uniform(pair.q1.space());
  EnvelopeOptions opt;
  for (auto _ : state) benchmark::DoNotOptimize(ratio_envelope({pair.q1, pair.q2}, u, u, static_cast<std::size_t>(state.range(0)), opt));
}
BENCHMARK(BM_RatioEnvelope)->Arg(10)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_Comparison(benchmark::State& state) {
  const auto g = random_weights(lazy_stick(static_cast<std::size_t>(state.range(0))), 2.0, 3);
  for (auto _ : state) benchmark::DoNotOptimize(comparison_check(g, 2.0));
}
BENCHMARK(BM_Comparison)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
