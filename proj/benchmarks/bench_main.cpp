#include <benchmark/benchmark.h>
#include "superpairs/qcoeff.hpp"
static void BM_placeholder(benchmark::State& s){ for (auto _ : s) benchmark::DoNotOptimize(qsp::quantum_int(5,1)); }
BENCHMARK(BM_placeholder);
BENCHMARK_MAIN();
