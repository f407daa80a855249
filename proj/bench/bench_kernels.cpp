#include <benchmark/benchmark.h>

#include <numbers>

#include "gl2tf/kernels.hpp"

using namespace gl2tf;
namespace k = gl2tf::kernels;

namespace {

Cocycle fixture() {
  return Cocycle::one_step(ShiftSpace::full(2),
                           {Mat2::diag(2.0, 0.5), Mat2::rotation(std::numbers::pi / 4) * Mat2::diag(2.0, 0.5)});
}

struct QmInput {
  ConnectorSearch search;
  std::vector<WordData> words;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
};

QmInput qm_input(const Cocycle& a, int n, int k_max) {
  QmInput in{ConnectorSearch(a, k_max), {}, {}};
  const WordList w = enumerate_words(a.shift(), n);
  for (std::size_t i = 0; i < w.size(); ++i) in.words.push_back(in.search.data(w[i]));
  for (std::uint32_t i = 0; i < in.words.size(); ++i)
    for (std::uint32_t j = 0; j < in.words.size(); ++j) in.pairs.emplace_back(i, j);
  return in;
}

void BM_WordSumSerial(benchmark::State& state) {
  const Cocycle a = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(k::serial::word_norm_sum(a, static_cast<int>(state.range(0))));
}

void BM_WordSumParallel(benchmark::State& state) {
  const Cocycle a = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(k::parallel::word_norm_sum(a, static_cast<int>(state.range(0))));
}

void BM_QmSerial(benchmark::State& state) {
  const Cocycle a = fixture();
  const QmInput in = qm_input(a, static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(k::serial::qm_min_ratio(in.search, in.words, in.pairs));
}

void BM_QmParallel(benchmark::State& state) {
  const Cocycle a = fixture();
  const QmInput in = qm_input(a, static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(k::parallel::qm_min_ratio(in.search, in.words, in.pairs));
}

void BM_LyapunovSerial(benchmark::State& state) {
  const Cocycle a = fixture();
  const MarkovMeasure mu = MarkovMeasure::bernoulli(a.shift(), {0.5, 0.5});
  for (auto _ : state) benchmark::DoNotOptimize(k::serial::lyapunov_trials(a, mu, state.range(0), 16, 1));
}

void BM_LyapunovParallel(benchmark::State& state) {
  const Cocycle a = fixture();
  const MarkovMeasure mu = MarkovMeasure::bernoulli(a.shift(), {0.5, 0.5});
  for (auto _ : state) benchmark::DoNotOptimize(k::parallel::lyapunov_trials(a, mu, state.range(0), 16, 1));
}

}  // namespace

BENCHMARK(BM_WordSumSerial)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WordSumParallel)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QmSerial)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QmParallel)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LyapunovSerial)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LyapunovParallel)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
