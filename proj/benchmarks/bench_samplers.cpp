#include <benchmark/benchmark.h>

#include "northpole/densities.hpp"
#include "northpole/haar.hpp"
#include "northpole/pole.hpp"

namespace {

using northpole::RngStream;

void BM_SampleF(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  RngStream rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(northpole::densities::sample_f(p, rng));
  }
}
BENCHMARK(BM_SampleF)->Arg(3)->Arg(20)->Arg(500);

void BM_ExactU2(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  RngStream rng(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(northpole::pole::sample_u2(p, rng).value);
  }
}
BENCHMARK(BM_ExactU2)->Arg(3)->Arg(20)->Arg(500);

void BM_ExactU3(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  RngStream rng(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(northpole::pole::sample_u3(p, rng).value);
  }
}
BENCHMARK(BM_ExactU3)->Arg(3)->Arg(20)->Arg(500);

void BM_HaarQr(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  RngStream rng(4);
  for (auto _ : state) {
    auto s = northpole::haar::sample_haar_qr(p, rng);
    benchmark::DoNotOptimize(s.gamma.data().data());
  }
  state.SetComplexityN(p);
}
BENCHMARK(BM_HaarQr)->RangeMultiplier(2)->Range(4, 128)->Complexity();

void BM_HaarDecomposition(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  RngStream rng(5);
  for (auto _ : state) {
    auto s = northpole::haar::sample_haar_decomposition(p, rng);
    benchmark::DoNotOptimize(s.gamma.data().data());
  }
  state.SetComplexityN(p);
}
BENCHMARK(BM_HaarDecomposition)->RangeMultiplier(2)->Range(4, 128)->Complexity();

// Exact representation vs (Γ^2)_11 from a full Haar draw.
void BM_DirectU2(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  RngStream rng(6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        northpole::pole::sample_direct(2, p, northpole::haar::HaarMethod::Qr, rng).value);
  }
}
BENCHMARK(BM_DirectU2)->Arg(3)->Arg(20)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
