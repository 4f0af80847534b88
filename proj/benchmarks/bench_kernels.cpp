#include <benchmark/benchmark.h>

#include "apfree/construction.hpp"
#include "apfree/linalg.hpp"
#include "apfree/prank.hpp"
#include "apfree/probability.hpp"
#include "apfree/tensor.hpp"
#include "apfree/veronese.hpp"

using namespace apfree;

namespace {

Tensor random_tensor(std::uint32_t p, std::uint32_t n, std::uint32_t d, std::uint64_t seed) {
  SplitRng rng(seed, 0);
  return Tensor::random(p, n, d, rng);
}

void BM_BiasCounting(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const Tensor t = random_tensor(3, n, 3, 99);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bias_multilinear(t).count);
  }
}
BENCHMARK(BM_BiasCounting)->Arg(2)->Arg(3);

void BM_DiagonalHistogram(benchmark::State& state) {
  const Tensor t = random_tensor(5, static_cast<std::uint32_t>(state.range(0)), 3, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(diagonal_histogram(t)[0]);
  }
}
BENCHMARK(BM_DiagonalHistogram)->Arg(4)->Arg(6);

void BM_PrankClassification(benchmark::State& state) {
  for (auto _ : state) {
    const PrankTable table = PrankTable::build(2, 2, 3);
    benchmark::DoNotOptimize(table.count_at_most(2));
  }
}
BENCHMARK(BM_PrankClassification);

void BM_VeroneseMap(benchmark::State& state) {
  SplitRng rng(3, 0);
  const FpVector x = sample_vector(static_cast<std::size_t>(state.range(0)), 7, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(veronese_map(x, 3).entries.size());
  }
}
BENCHMARK(BM_VeroneseMap)->Arg(4)->Arg(8);

void BM_BuildWitness(benchmark::State& state) {
  SplitRng rng(11, 0);
  const SymmetricTensor t = random_symmetric(5, static_cast<std::uint32_t>(state.range(0)), 2, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_witness(t).members.size());
  }
}
BENCHMARK(BM_BuildWitness)->Arg(4)->Arg(6);

void BM_VerifyNoKap(benchmark::State& state) {
  const DifferenceSet s = sample_difference_set(5, 4, 3, 2024);
  SymmetricTensor t = find_tensor(s, 2);
  const WitnessSet a = build_witness(t);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_no_kap(a, s, 3).no_kap);
  }
}
BENCHMARK(BM_VerifyNoKap);

void BM_MatrixRank(benchmark::State& state) {
  SplitRng rng(5, 0);
  const auto n = static_cast<std::size_t>(state.range(0));
  FpMatrix m(n, n, 7);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, rng.next_below(7));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(rank(m));
  }
}
BENCHMARK(BM_MatrixRank)->Arg(16)->Arg(64);

void BM_PipelineTrial(benchmark::State& state) {
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_pipeline_trial(5, 3, 3, 4, 1, trial++).independent);
  }
}
BENCHMARK(BM_PipelineTrial);

}  // namespace

BENCHMARK_MAIN();
