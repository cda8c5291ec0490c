#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "splinecal/curves.hpp"
#include "splinecal/dataset.hpp"
#include "splinecal/metrics.hpp"
#include "splinecal/recalibrate.hpp"
#include "splinecal/spline.hpp"
#include "splinecal/synth.hpp"

namespace {

splinecal::EvalSet make_set(std::size_t n, std::size_t k) {
  splinecal::SynthSpec spec;
  spec.n_samples = n;
  spec.n_classes = k;
  spec.link = splinecal::Link::power(2.0);
  spec.seed = 1;
  return splinecal::generate(spec);
}

void BM_FromLogits(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const std::size_t k = 10;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> dist(-8.0, 8.0);
  splinecal::Matrix raw(n, k);
  std::vector<int> labels(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) raw(i, j) = dist(rng);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(splinecal::from_logits(raw, labels));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_FromLogits)->Arg(1000)->Arg(20000);

void BM_ScoreTargetTop1(benchmark::State& state) {
  const auto ev = make_set(static_cast<std::size_t>(state.range(0)), 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(splinecal::score_target(ev, splinecal::CalibrationTarget::top_r(1)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ScoreTargetTop1)->Arg(20000);

void BM_KsError(benchmark::State& state) {
  const auto ev = make_set(static_cast<std::size_t>(state.range(0)), 10);
  const auto ss = splinecal::score_target(ev, splinecal::CalibrationTarget::top_r(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(splinecal::ks_error(ss));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KsError)->Arg(20000);

void BM_SplineFit(benchmark::State& state) {
  const auto ev = make_set(20000, 10);
  const auto ss = splinecal::score_target(ev, splinecal::CalibrationTarget::top_r(1));
  const auto c = splinecal::cumulative(ss);
  const splinecal::KnotGrid grid(static_cast<std::size_t>(state.range(0)), 0.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(splinecal::Spline::fit(c.fractiles, c.cum_prob, grid));
  }
}
BENCHMARK(BM_SplineFit)->Arg(6)->Arg(13);

void BM_BuildMap(benchmark::State& state) {
  const auto ev = make_set(20000, 10);
  const auto ss = splinecal::score_target(ev, splinecal::CalibrationTarget::top_r(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(splinecal::build_map(ss, 6));
  }
}
BENCHMARK(BM_BuildMap);

void BM_ApplyMap(benchmark::State& state) {
  const auto calib = make_set(20000, 10);
  const auto map =
      splinecal::build_map(splinecal::score_target(calib, splinecal::CalibrationTarget::top_r(1)), 6);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> queries(10000);
  for (auto& q : queries) q = dist(rng);
  for (auto _ : state) {
    double acc = 0.0;
    for (double q : queries) acc += splinecal::apply_map(map, q);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(queries.size()));
}
BENCHMARK(BM_ApplyMap);

void BM_Ece(benchmark::State& state) {
  const auto ev = make_set(20000, 10);
  const auto ss = splinecal::score_target(ev, splinecal::CalibrationTarget::top_r(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(splinecal::ece(ss, 25));
  }
}
BENCHMARK(BM_Ece);

}  // namespace

BENCHMARK_MAIN();
