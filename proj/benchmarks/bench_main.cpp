#include <benchmark/benchmark.h>

#include <random>

#include "phiorbit/mertens.hpp"
#include "phiorbit/orbit.hpp"
#include "phiorbit/primes.hpp"
#include "phiorbit/totient.hpp"

using namespace phiorbit;

static void BM_PhiSieve(benchmark::State& state) {
  const u64 n = static_cast<u64>(state.range(0));
  for (auto _ : state) {
    PhiSieve s(n, n + 1);
    benchmark::DoNotOptimize(s[n]);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_PhiSieve)->Arg(1 << 20)->Arg(1 << 24)->Unit(benchmark::kMillisecond);

static void BM_PrimeStream(benchmark::State& state) {
  const u64 n = static_cast<u64>(state.range(0));
  for (auto _ : state) {
    PrimeStream s(0, n);
    u64 count = 0;
    while (s.next() != 0) ++count;
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_PrimeStream)->Arg(100'000'000)->Unit(benchmark::kMillisecond);

static void BM_Factor64(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<u64> inputs(256);
  for (auto& v : inputs) v = rng() | 1;
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(factor(inputs[i++ & 255]));
  }
}
BENCHMARK(BM_Factor64);

static void BM_DetectCycle(benchmark::State& state) {
  static const PhiSieve sieve(1 << 22);
  const unsigned d = static_cast<unsigned>(state.range(0));
  OrbitSpec spec;
  spec.d = d;
  spec.k = 4;
  u64 seed = 1;
  for (auto _ : state) {
    spec.seeds.assign(d, 0);
    for (unsigned j = 0; j < d; ++j) spec.seeds[j] = seed + 37 * j;
    seed = seed % 2000 + 1;
    benchmark::DoNotOptimize(detect_cycle(spec, &sieve));
  }
}
BENCHMARK(BM_DetectCycle)->Arg(1)->Arg(2);

static void BM_DetectCycleNaive(benchmark::State& state) {
  static const PhiSieve sieve(1 << 22);
  OrbitSpec spec;
  spec.d = 2;
  spec.k = 4;
  u64 seed = 1;
  for (auto _ : state) {
    spec.seeds = {seed, seed + 37};
    seed = seed % 2000 + 1;
    benchmark::DoNotOptimize(detect_cycle_naive(spec, &sieve));
  }
}
BENCHMARK(BM_DetectCycleNaive);

static void BM_Mertens(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mertens_product(static_cast<u64>(state.range(0))));
}
BENCHMARK(BM_Mertens)->Arg(10'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

static void BM_CrtWitness(benchmark::State& state) {
  const u64 X = static_cast<u64>(state.range(0));
  for (auto _ : state) {
    const CrtWitness w = build_crt_witness(X, 0);
    benchmark::DoNotOptimize(verify_crt_witness(w).ok());
  }
}
BENCHMARK(BM_CrtWitness)->Arg(6)->Arg(50)->Unit(benchmark::kMicrosecond);

static void BM_CrtWitnessSixTwo(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_crt_witness(6, 2).y);
}
BENCHMARK(BM_CrtWitnessSixTwo)->Unit(benchmark::kMillisecond)->Iterations(3);

BENCHMARK_MAIN();
