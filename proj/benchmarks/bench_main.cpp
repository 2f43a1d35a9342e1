#include <benchmark/benchmark.h>

#include "netform/baseline.hpp"
#include "netform/efficiency.hpp"
#include "netform/equilibrium.hpp"
#include "netform/game.hpp"
#include "netform/rng.hpp"

using namespace netform;

namespace {

void BM_EfficientCorePeriphery(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto types = TypeVector::from_counts({n / 6, n / 3, n - n / 6 - n / 3});
  const PayoffParams p{{16.0, 10.0, 6.0}, 5.0, 0.6};
  for (auto _ : state) benchmark::DoNotOptimize(efficient_core_periphery(types, p));
}
BENCHMARK(BM_EfficientCorePeriphery)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Stats(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto types = TypeVector::from_counts({n / 6, n / 3, n - n / 6 - n / 3});
  const auto g = efficient_core_periphery(types, {{16.0, 10.0, 6.0}, 5.0, 0.6}).network;
  for (auto _ : state) benchmark::DoNotOptimize(stats(g));
}
BENCHMARK(BM_Stats)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_LinkMarginals(benchmark::State& state) {
  const std::size_t n = 1000;
  Rng rng(3);
  Network g(n);
  for (int k = 0; k < 3000; ++k) g.add(select_pair(rng, n));
  const auto types = TypeVector::homogeneous(n);
  const PayoffParams p{{10.0}, 5.0, 0.6};
  for (auto _ : state) benchmark::DoNotOptimize(link_marginals(g, types, p, select_pair(rng, n)));
}
BENCHMARK(BM_LinkMarginals)->Unit(benchmark::kMicrosecond);

void BM_BruteForceEfficient(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto types = TypeVector::from_counts({2, n - 2});
  const auto model = PayoffModel::connections({{4.0, 0.9}, 1.0, 0.5});
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_efficient(types, model));
}
BENCHMARK(BM_BruteForceEfficient)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_ExactDeviationGain(benchmark::State& state) {
  const auto K = static_cast<std::uint32_t>(state.range(0));
  const auto model = PayoffModel::table(example1_table(1.0));
  const auto types = TypeVector::homogeneous(3);
  for (auto _ : state)
    benchmark::DoNotOptimize(one_shot_deviation_gain(Network::complete(3), types, model, 0.98, K));
}
BENCHMARK(BM_ExactDeviationGain)->Arg(10)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_CooperationRun(benchmark::State& state) {
  const auto types = TypeVector::from_counts({2, 3});
  const auto target = efficient_core_periphery(types, {{4.0, 0.9}, 1.0, 0.5}).network;
  SimConfig c;
  c.n = 5;
  c.K = 4;
  c.epsilon = 1e-3;
  c.horizon = 10000;
  c.record_trace = false;
  c.initial_network = Network(5);
  for (auto _ : state) {
    CooperationProtocol p(target, c.K);
    benchmark::DoNotOptimize(run(c, p));
    ++c.seed;
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * c.horizon));
}
BENCHMARK(BM_CooperationRun)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
