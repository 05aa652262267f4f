#include <benchmark/benchmark.h>

#include <cmath>

#include "blowup/envelope.hpp"
#include "blowup/extremal.hpp"
#include "blowup/oscillator.hpp"
#include "blowup/reparam.hpp"
#include "blowup/verifier.hpp"

using namespace blowup;

static void BM_BuildOscillator(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_oscillator({1.0, depth, 64}));
  }
}
BENCHMARK(BM_BuildOscillator)->Arg(8)->Arg(20)->Arg(40);

static void BM_Eval(benchmark::State& state) {
  const auto X = build_oscillator({1.0, 8, 512});
  double tau = 0.0;
  for (auto _ : state) {
    tau = std::fmod(tau + 0.37, X.domain_end());
    benchmark::DoNotOptimize(X.eval(tau));
  }
}
BENCHMARK(BM_Eval);

static void BM_EvalDerivative(benchmark::State& state) {
  const auto X = build_oscillator({1.0, 8, 512});
  double tau = 0.0;
  for (auto _ : state) {
    tau = std::fmod(tau + 0.37, X.domain_end());
    benchmark::DoNotOptimize(X.eval_derivative(tau));
  }
}
BENCHMARK(BM_EvalDerivative);

static void BM_SolveSpline(benchmark::State& state) {
  int n = 0;
  for (auto _ : state) {
    n = (n + 1) % 30;
    benchmark::DoNotOptimize(solve_spline(n));
  }
}
BENCHMARK(BM_SolveSpline);

static void BM_TimeMap(benchmark::State& state) {
  const auto X = build_oscillator({1.0, 8, 512});
  for (auto _ : state) {
    benchmark::DoNotOptimize(time_map(X, 5.0));
  }
}
BENCHMARK(BM_TimeMap);

static void BM_InverseTimeMap(benchmark::State& state) {
  const auto X = build_oscillator({1.0, 8, 512});
  const ReparamResult r = blowup_time(X, 8);
  const double t = 0.6 * r.table.values.back();
  for (auto _ : state) {
    benchmark::DoNotOptimize(inverse_time_map(r, X, t));
  }
}
BENCHMARK(BM_InverseTimeMap);

static void BM_ResidualTransformed(benchmark::State& state) {
  const auto X = build_oscillator({1.0, 8, 512});
  const int density = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(residual_transformed(X, density, 0.0));
  }
  state.SetComplexityN(density);
}
BENCHMARK(BM_ResidualTransformed)->RangeMultiplier(2)->Range(128, 1024)->Complexity();

static void BM_ClosedFormLogX(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(closed_form_logX(1.0, 4.0));
  }
}
BENCHMARK(BM_ClosedFormLogX);

static void BM_BlowupRatio(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(blowup_ratio(1.0, 10.0));
  }
}
BENCHMARK(BM_BlowupRatio);

static void BM_EnvelopeFirst(benchmark::State& state) {
  const EnvelopeParams ep{1.0, 1.0, 24.0 / 5.0, 2};
  double L = 2.0;
  for (auto _ : state) {
    L = 2.0 + std::fmod(L, 80.0);
    benchmark::DoNotOptimize(envelope_first_at_gap(std::exp(-L), ep));
  }
}
BENCHMARK(BM_EnvelopeFirst);

BENCHMARK_MAIN();
