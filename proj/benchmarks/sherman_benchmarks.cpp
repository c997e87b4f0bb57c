#include <benchmark/benchmark.h>

#include "random_instances.hpp"
#include "sherman/sherman.hpp"

namespace {

using namespace sherman;

void BM_DividedDifference(benchmark::State& state) {
  const FunctionSpec f = make_function("exp", {0.0, 1.0});
  testing::Rng rng(1);
  auto pts = rng.vector(static_cast<std::size_t>(state.range(0)), 0.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(divided_difference(pts, f));
}
BENCHMARK(BM_DividedDifference)->DenseRange(2, 8, 2);

void BM_StrongModulus(benchmark::State& state) {
  const FunctionSpec f = make_function("xlogx", {0.1, 3.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_strong_modulus(f, 2, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_StrongModulus)->Arg(1001)->Arg(10001);

void BM_FullChain(benchmark::State& state) {
  const Interval dom(0.0, 1.0);
  const FunctionSpec f = make_function("exp", dom);
  const Modulus c = Modulus::from_certificate(estimate_strong_modulus(f, 2));
  testing::Rng rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = testing::weighted_instance(rng, n, n, dom);
  for (auto _ : state) benchmark::DoNotOptimize(full_chain(inst.x, inst.y, inst.A, f, c));
}
BENCHMARK(BM_FullChain)->Arg(8)->Arg(64)->Arg(256);

void BM_ConstructDoublyStochastic(benchmark::State& state) {
  testing::Rng rng(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = rng.vector(n, -1.0, 1.0);
  const StochasticMatrix D(testing::doubly_stochastic(rng, n), StochasticKind::doubly);
  const auto y = apply_transpose(D, x);
  for (auto _ : state) benchmark::DoNotOptimize(construct_doubly_stochastic(x, y));
}
BENCHMARK(BM_ConstructDoublyStochastic)->Arg(8)->Arg(64)->Arg(256);

void BM_ShermanDifferenceIdentity(benchmark::State& state) {
  const Interval dom(0.0, 1.0);
  const FunctionSpec f = make_function("exp", dom);
  testing::Rng rng(4);
  const auto inst = testing::weighted_instance(rng, 8, 8, dom);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sherman_difference_identity(inst.x, inst.y, f, n));
  }
}
BENCHMARK(BM_ShermanDifferenceIdentity)->DenseRange(2, 5);

void BM_DivergenceBounds(benchmark::State& state) {
  testing::Rng rng(5);
  const auto p = testing::simplex_point(rng, 64);
  const auto q = testing::simplex_point(rng, 64);
  const DistributionPair pair(p, q);
  const DivergenceKernel k = make_kernel("kl", pair.ratio_interval());
  for (auto _ : state) benchmark::DoNotOptimize(divergence_bounds(pair, k));
}
BENCHMARK(BM_DivergenceBounds);

}  // namespace

BENCHMARK_MAIN();
