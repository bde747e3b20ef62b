#include <benchmark/benchmark.h>

#include <cmath>

#include "entspec/concentration.hpp"
#include "entspec/random.hpp"
#include "entspec/rates.hpp"
#include "entspec/sequences.hpp"

using namespace entspec;

namespace {

void BM_iid_realize(benchmark::State& state) {
  const StateSequence seq = StateSequence::iid({0.4, 0.3, 0.2, 0.1});
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(seq.spectrum_at(n));
  }
}
BENCHMARK(BM_iid_realize)->Arg(50)->Arg(150)->Arg(300);

void BM_pi_trace_structured_sweep(benchmark::State& state) {
  const StructuredSpectrum spec = StateSequence::iid({0.75, 0.25}).spectrum_at(200);
  for (auto _ : state) {
    double acc = 0.0;
    for (double gamma = -1.0; gamma < 0.0; gamma += 0.005) {
      acc += pi_trace(spec, gamma, 200);
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_pi_trace_structured_sweep);

void BM_pi_trace_dense(benchmark::State& state) {
  const auto dim = static_cast<Eigen::Index>(state.range(0));
  RandomSource rng(1);
  const DensityOperator rho = random_density(rng, dim);
  const DensityOperator omega = random_density(rng, dim);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pi_trace(rho, omega.hermitian(), -0.2, 1));
  }
}
BENCHMARK(BM_pi_trace_dense)->Arg(8)->Arg(32)->Arg(64);

void BM_conditional_secular(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const StructuredSpectrum schmidt = StateSequence::iid({0.75, 0.25}).spectrum_at(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(conditional_pi_trace(schmidt, 0.3, n));
  }
}
BENCHMARK(BM_conditional_secular)->Arg(8)->Arg(64)->Arg(200);

void BM_concentrate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const StructuredSpectrum spec = StateSequence::iid({0.75, 0.25}).spectrum_at(n);
  const double gamma = 0.512335;
  for (auto _ : state) {
    benchmark::DoNotOptimize(concentrate(spec, gamma, n));
  }
}
BENCHMARK(BM_concentrate)->Arg(50)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
