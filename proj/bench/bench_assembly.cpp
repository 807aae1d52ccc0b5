// OpenMP kernels against their serial references.
//   ./bench_assembly --benchmark_filter=Assemble

#include "igabeam/analysis.hpp"
#include "igabeam/beam_assembly.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

using namespace igabeam;

namespace {

template <bool Parallel>
void BM_Assemble(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    const int ne = static_cast<int>(state.range(1));
    const Section s = Section::normalized(0.01);
    const Curve c = k_refine(make_straight_beam(1.0), p, ne);
    const QuadratureRule rule = gauss_legendre(p + 1);
    for (auto _ : state) {
        GlobalSystem g = Parallel ? assemble(s, c, rule) : assemble_serial(s, c, rule);
        benchmark::DoNotOptimize(g.K.data());
    }
    state.counters["elements"] = ne;
    state.counters["threads"] = Parallel ? omp_get_max_threads() : 1;
}

template <bool Parallel>
void BM_Table(benchmark::State& state) {
    TableOptions opts;
    opts.elements = static_cast<int>(state.range(0));
    opts.parallel = Parallel;
    for (auto _ : state) {
        TableResult t = reproduce_table(1, opts);
        benchmark::DoNotOptimize(t.lambda.data());
    }
}

} // namespace

BENCHMARK(BM_Assemble<false>)->Name("AssembleSerial")->Args({3, 64})->Args({3, 256})->Args({5, 256});
BENCHMARK(BM_Assemble<true>)->Name("AssembleParallel")->Args({3, 64})->Args({3, 256})->Args({5, 256});
BENCHMARK(BM_Table<false>)->Name("TableSerial")->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Table<true>)->Name("TableParallel")->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
