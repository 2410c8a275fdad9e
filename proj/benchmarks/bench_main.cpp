#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "sigmaflow/experiments.hpp"
#include "sigmaflow/flow.hpp"
#include "sigmaflow/symfunc.hpp"

namespace {

void BM_SigmaK(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> lam(n);
  for (double& x : lam) x = d(rng);
  for (auto _ : state) {
    for (int k = 0; k <= n; ++k) benchmark::DoNotOptimize(sigmaflow::sigma_k(std::span<const double>(lam), k));
  }
}
BENCHMARK(BM_SigmaK)->Arg(5)->Arg(8)->Arg(16);

void BM_QuotientGrad(benchmark::State& state) {
  const std::vector<double> diag{1.0, 2.0, 3.0, 0.5, 0.25};
  const auto w = sigmaflow::SymMatrix::diagonal(diag);
  for (auto _ : state) benchmark::DoNotOptimize(sigmaflow::quotient_grad(w, 0.1));
}
BENCHMARK(BM_QuotientGrad);

void BM_MakeState(benchmark::State& state) {
  const int grid = static_cast<int>(state.range(0));
  const auto u = sigmaflow::ConformalFactor::from_theta(
      sigmaflow::Grid::make(grid, 200), [](double t) { return 0.2 * std::cos(2 * t); }, 5,
      sigmaflow::Convention::PlusTwoU);
  for (auto _ : state) benchmark::DoNotOptimize(sigmaflow::make_state(u, 0.1));
}
BENCHMARK(BM_MakeState)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_HeunStep(benchmark::State& state) {
  const auto u = sigmaflow::ConformalFactor::from_theta(
      sigmaflow::Grid::make(128, 200), [](double t) { return 0.2 * std::cos(2 * t); }, 5,
      sigmaflow::Convention::PlusTwoU);
  const auto s = sigmaflow::make_state(u, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(sigmaflow::heun_step(s, 5e-5));
}
BENCHMARK(BM_HeunStep)->Unit(benchmark::kMicrosecond);

void BM_FamilyPoint(benchmark::State& state) {
  const double ell = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sigmaflow::family_point(ell, 5));
}
BENCHMARK(BM_FamilyPoint)->Arg(10)->Arg(1000)->Arg(100000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
