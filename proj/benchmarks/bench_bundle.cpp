#include "weylbott/cohomology.hpp"

#include <benchmark/benchmark.h>

using namespace weylbott;

static void BM_tensor_bundles_both_routes(benchmark::State& state) {
    const auto& p = ParabolicDatum::get('F', 4, 1);
    IrreducibleBundle a = IrreducibleBundle::from_coords(p, {0, 0, 2}, 0);
    IrreducibleBundle b = IrreducibleBundle::from_coords(p, {0, 1, 0}, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tensor_bundles(a, b, TensorRoute::Both));
    }
}
BENCHMARK(BM_tensor_bundles_both_routes);

static void BM_acyclicity_scan(benchmark::State& state) {
    const auto& p = ParabolicDatum::get('F', 4, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(acyclicity_scan(p, {1, 0, 1}, -12, -1));
    }
}
BENCHMARK(BM_acyclicity_scan);

static void BM_ext_semisimple(benchmark::State& state) {
    const auto& p = ParabolicDatum::get('F', 4, 1);
    BundleSum a = parse_bundle_sum(p, "O + U[1,0,0](-1) + O(1)");
    for (auto _ : state) {
        benchmark::DoNotOptimize(ext_semisimple(a, a));
    }
}
BENCHMARK(BM_ext_semisimple);
