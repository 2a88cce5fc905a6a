// Parallel block kernel vs the serial reference, and the two root-finding methods.

#include <benchmark/benchmark.h>

#include "pfc/scan.hpp"

using namespace pfc;

namespace {

ScanConfig bench_config(unsigned k, u64 D, u64 width) {
    ScanConfig c;
    c.k = k;
    c.D = D;
    c.rho0 = Rational{17, 10};
    c.min_r = 1'000'000;
    c.max_r = 1'000'000 + width;
    return c;
}

void BM_Serial(benchmark::State& state) {
    const ScanConfig cfg = bench_config(static_cast<unsigned>(state.range(0)), 7, 20'000'000);
    for (auto _ : state) benchmark::DoNotOptimize(scan_range_serial(cfg).size());
}

void BM_Parallel(benchmark::State& state) {
    const ScanConfig cfg = bench_config(static_cast<unsigned>(state.range(0)), 7, 20'000'000);
    ScanOptions opts;
    opts.threads = static_cast<unsigned>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(scan_range(cfg, opts).size());
}

void BM_Method(benchmark::State& state) {
    const ScanConfig cfg = bench_config(static_cast<unsigned>(state.range(0)), 7, 5'000'000);
    ScanOptions opts;
    opts.threads = 1;
    opts.method = state.range(1) == 0 ? RootMethod::PrimitiveRoot : RootMethod::Factor;
    for (auto _ : state) benchmark::DoNotOptimize(scan_range(cfg, opts).size());
}

} // namespace

BENCHMARK(BM_Serial)->Arg(5)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)->Args({5, 1})->Args({5, 4})->Args({5, 0})->Args({12, 1})->Args({12, 0})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Method)->ArgNames({"k", "factor"})->Args({5, 0})->Args({5, 1})->Args({12, 0})->Args({12, 1})->Args({24, 0})->Args({24, 1})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
