#include "weylbott/character.hpp"

#include <benchmark/benchmark.h>

using namespace weylbott;

// Freudenthal recursion without cache reuse across iterations is not easy to
// arrange (the library caches by design), so these measure the cached and
// cold layers separately via distinct weights.

static void BM_dominant_character_f4_adjoint(benchmark::State& state) {
    const auto& f4 = WeightSystem::full(RootDatum::get('F', 4));
    Weight hw = f4.datum().from_fundamental_long({1, 0, 0, 0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(&dominant_character(f4, hw));
    }
}
BENCHMARK(BM_dominant_character_f4_adjoint);

static void BM_tensor_klimyk_c3(benchmark::State& state) {
    const auto& c3 = WeightSystem::full(RootDatum::get('C', 3));
    Weight a = c3.datum().from_fundamental_long({state.range(0), state.range(0), state.range(0)});
    for (auto _ : state) {
        benchmark::DoNotOptimize(tensor_decompose(c3, a, a));
    }
}
BENCHMARK(BM_tensor_klimyk_c3)->Arg(1)->Arg(2);

static void BM_tensor_peeling_c3(benchmark::State& state) {
    const auto& c3 = WeightSystem::full(RootDatum::get('C', 3));
    Weight a = c3.datum().from_fundamental_long({state.range(0), state.range(0), state.range(0)});
    for (auto _ : state) {
        benchmark::DoNotOptimize(tensor_by_peeling(c3, a, a));
    }
}
BENCHMARK(BM_tensor_peeling_c3)->Arg(1)->Arg(2);

BENCHMARK_MAIN();
