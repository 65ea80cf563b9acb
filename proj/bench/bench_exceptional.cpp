#include "symdiv/exceptional.hpp"

#include <benchmark/benchmark.h>

using namespace symdiv;

namespace {

// CP2#n with generic decreasing areas.
AreaVector sample_areas(int n) {
    std::vector<Rational> w{Rational(1)};
    for (int i = 1; i <= n; ++i) w.push_back(Rational(1, i + 2) + Rational(1, 1000 * i));
    return AreaVector(Ambient::rational_blowup(n), w);
}

void BM_EnumerateSerial(benchmark::State& state) {
    const AreaVector w = sample_areas(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_exceptional_serial(w, std::nullopt, 6));
}

void BM_EnumerateParallel(benchmark::State& state) {
    const AreaVector w = sample_areas(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_exceptional(w, std::nullopt, 6));
}

}  // namespace

BENCHMARK(BM_EnumerateSerial)->DenseRange(5, 8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateParallel)->DenseRange(5, 8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
