#include <benchmark/benchmark.h>

#include <random>

#include "rbminit/evaluation.hpp"
#include "rbminit/meanfield.hpp"
#include "rbminit/quadrature.hpp"
#include "rbminit/training.hpp"

using namespace rbminit;

namespace {

Rbm random_rbm(int n, int m, HiddenSpace hidden, double scale) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> normal(0.0, scale);
  Rbm rbm(n, m, hidden);
  for (int i = 0; i < n; ++i) {
    rbm.b[i] = normal(rng);
  }
  for (int j = 0; j < m; ++j) {
    rbm.c[j] = normal(rng);
  }
  for (Eigen::Index k = 0; k < rbm.w.size(); ++k) {
    rbm.w(k) = normal(rng);
  }
  return rbm;
}

void BM_QuadratureRule(benchmark::State& state) {
  const auto order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    QuadratureRule rule(order);
    benchmark::DoNotOptimize(rule.nodes().data());
  }
}
BENCHMARK(BM_QuadratureRule)->Arg(101)->Arg(404)->Arg(1616)->Unit(benchmark::kMillisecond);

void BM_SaddlePoint(benchmark::State& state) {
  const QuadratureRule& rule = QuadratureRule::standard_normal();
  const ModelConfig config{1.5, 1e-3, -2.0, HiddenSpace::Binary, 2.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_saddle_point(config, rule).q_v);
  }
}
BENCHMARK(BM_SaddlePoint)->Unit(benchmark::kMicrosecond);

void BM_FindBetaMax(benchmark::State& state) {
  const double c = -static_cast<double>(state.range(0));
  // The first search also builds the cached high-order rules it escalates to.
  benchmark::DoNotOptimize(find_beta_max(1.0, 0.0, c, HiddenSpace::Binary));
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_beta_max(1.0, 0.0, c, HiddenSpace::Binary));
  }
}
BENCHMARK(BM_FindBetaMax)->Arg(0)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_ExactLogPartition(benchmark::State& state) {
  const Rbm rbm = random_rbm(static_cast<int>(state.range(0)), 30, HiddenSpace::Ising, 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_partition_exact(rbm));
  }
}
BENCHMARK(BM_ExactLogPartition)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_GibbsSweep(benchmark::State& state) {
  const Rbm rbm = random_rbm(100, 50, HiddenSpace::Binary, 0.1);
  PersistentChains chains = init_chains(rbm, static_cast<int>(state.range(0)), 0, 1);
  for (auto _ : state) {
    advance_chains(rbm, chains, 1);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GibbsSweep)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_Mais(benchmark::State& state) {
  const Rbm rbm = random_rbm(12, 8, HiddenSpace::Binary, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mais_log_partition(rbm, {200, static_cast<int>(state.range(0)), 0}).log_z);
  }
}
BENCHMARK(BM_Mais)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
