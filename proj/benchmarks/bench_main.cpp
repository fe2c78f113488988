#include <benchmark/benchmark.h>

#include "bnladder/decay.hpp"
#include "bnladder/fractional.hpp"
#include "bnladder/gram.hpp"
#include "bnladder/zeta.hpp"

using namespace bnladder;

static void BM_ZetaHalf(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(zeta_half(t));
}
BENCHMARK(BM_ZetaHalf)->Arg(10)->Arg(100)->Arg(1000);

static void BM_InnerDirectReciprocal(benchmark::State& state) {
  const QuadratureConfig quad;
  const auto a = ThetaParam::reciprocal(static_cast<std::uint64_t>(state.range(0)));
  const auto b = ThetaParam::reciprocal(6);
  for (auto _ : state) benchmark::DoNotOptimize(inner_direct(a, b, quad).value);
}
BENCHMARK(BM_InnerDirectReciprocal)->Arg(8)->Arg(729)->Arg(5184);

static void BM_InnerDirectCutoff(benchmark::State& state) {
  const QuadratureConfig quad = QuadratureConfig::with_tolerance(1e-4);
  for (auto _ : state) benchmark::DoNotOptimize(inner_direct(ThetaParam(0.7), ThetaParam(0.3), quad).value);
}
BENCHMARK(BM_InnerDirectCutoff)->Unit(benchmark::kMillisecond);

static void BM_GramRawDirect(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_gram({n, n}, GramKind::raw(), GramMethod::Direct, QuadratureConfig{}).entries);
  }
}
BENCHMARK(BM_GramRawDirect)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_GramSmoothedSpectral(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        build_gram({n, n}, GramKind::smoothed({5.0, 1e-6}), GramMethod::Spectral, QuadratureConfig{}).entries);
  }
}
BENCHMARK(BM_GramSmoothedSpectral)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_SchurAndOpnorm(benchmark::State& state) {
  const auto g = build_gram({8, 8}, GramKind::raw(), GramMethod::Direct, QuadratureConfig{});
  for (auto _ : state) {
    benchmark::DoNotOptimize(schur_truncation_bound(g, 2));
    benchmark::DoNotOptimize(opnorm_residual(g, 2).value);
  }
}
BENCHMARK(BM_SchurAndOpnorm);
BENCHMARK_MAIN();
