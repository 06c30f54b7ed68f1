#include "weylbott/ledger.hpp"

#include <benchmark/benchmark.h>

using namespace weylbott;

static void BM_verify_paper(benchmark::State& state) {
    for (auto _ : state) {
        LedgerRun run = run_ledger_file(WEYLBOTT_LEDGER_PATH);
        if (!run.all_pass()) state.SkipWithError("ledger run failed");
        benchmark::DoNotOptimize(run);
    }
}
BENCHMARK(BM_verify_paper)->Unit(benchmark::kMillisecond)->Iterations(1);
