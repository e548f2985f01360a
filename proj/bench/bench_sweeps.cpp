// Serial vs OpenMP execution of the sweep-layer kernels.
#include <algorithm>

#include <benchmark/benchmark.h>

#include "ptlab/counting.hpp"
#include "ptlab/spectra.hpp"

namespace {

ptlab::Execution mode(const benchmark::State& state) {
    return state.range(0) == 0 ? ptlab::Execution::Serial : ptlab::Execution::Parallel;
}

void BM_DegenerationScan(benchmark::State& state) {
    auto eps = ptlab::logspace(-6.0, -2.0, 400);
    std::reverse(eps.begin(), eps.end());
    for (auto _ : state) {
        auto scan = ptlab::degeneration_scan(1.0, 1.0, eps, ptlab::DegenerationFamily::PT2,
                                             mode(state));
        benchmark::DoNotOptimize(scan.omega_small.data());
    }
}
BENCHMARK(BM_DegenerationScan)->Arg(0)->Arg(1)->ArgName("parallel");

void BM_Table1(benchmark::State& state) {
    for (auto _ : state) {
        auto rows = ptlab::table1_report(5, {}, 42, mode(state));
        benchmark::DoNotOptimize(rows.data());
    }
}
BENCHMARK(BM_Table1)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
