#include <benchmark/benchmark.h>

#include <vector>

#include "sparsepois/bounds.hpp"
#include "sparsepois/estimators.hpp"
#include "sparsepois/lower_bound.hpp"
#include "sparsepois/model.hpp"
#include "sparsepois/poisson.hpp"
#include "sparsepois/random.hpp"

namespace sp = sparsepois;

static void BM_PoissonSample(benchmark::State& state) {
  const double mean = static_cast<double>(state.range(0)) / 10.0;
  sp::Xoshiro256 rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sp::sample_poisson(rng, mean));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PoissonSample)->Arg(5)->Arg(50)->Arg(99)->Arg(100)->Arg(1000)->Arg(100000);

static void BM_GhtEstimate(benchmark::State& state) {
  const std::size_t p = 16;
  const std::size_t n = static_cast<std::size_t>(state.range(0)) / p;
  sp::DenseMatrix m(p, n);
  sp::Xoshiro256 rng(2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) m(j, i) = 0.25 * static_cast<double>(rng() % 8);
  const sp::ObservationMatrix X(std::move(m), 0.5);
  const std::vector<double> mu0(p, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(sp::ght_estimate(X, mu0, 0.5, 10.0));
  state.SetComplexityN(state.range(0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GhtEstimate)->RangeMultiplier(2)->Range(1 << 16, 1 << 22)->Complexity(benchmark::oN);

static void BM_SampleObservations(benchmark::State& state) {
  const sp::IntensityMatrix M(sp::DenseMatrix(16, static_cast<std::size_t>(state.range(0)), 1.0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sp::sample_observations(M, 0.1, seed++));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 16);
}
BENCHMARK(BM_SampleObservations)->Arg(100)->Arg(1000);

static void BM_KlMixtureExact(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sp::kl_mixture_exact(32768, 128, 1.0, 0.83, 1.0));
}
BENCHMARK(BM_KlMixtureExact);

static void BM_Packing(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(sp::varshamov_gilbert_packing(static_cast<std::size_t>(state.range(0)), seed++));
}
BENCHMARK(BM_Packing)->Arg(16)->Arg(32)->Arg(48);

BENCHMARK_MAIN();
