#include <benchmark/benchmark.h>

#include "apspec/models.hpp"
#include "apspec/spectrum.hpp"

using namespace aps;

static void BM_PieceMatrix(benchmark::State& state) {
    auto piece = PotentialPiece::constant(1.0, 1.0);
    double E = 2.7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(piece_matrix(piece, E));
        E += 1e-9;  // defeat caching of a constant result
    }
}
BENCHMARK(BM_PieceMatrix);

static void BM_WordMatrix(benchmark::State& state) {
    Model step = realize(ClosedFormModel::step(1.0));
    Word w = iterate_substitution(Substitution::fibonacci(), 'a', (int)state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(word_matrix(step, w, 2.7));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WordMatrix)->Arg(8)->Arg(12)->Arg(16);

static void BM_TraceRecursion(benchmark::State& state) {
    Model step = realize(ClosedFormModel::step(1.0));
    for (auto _ : state) benchmark::DoNotOptimize(trace_recursion(step, 2.7, 100));
}
BENCHMARK(BM_TraceRecursion);

static void BM_InvariantSweep(benchmark::State& state) {
    Model step = realize(ClosedFormModel::step(1.0));
    for (auto _ : state) {
        double acc = 0;
        for (int i = 0; i < 100; ++i) acc += invariant_at(step, 0.1 + 0.5 * i);
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_InvariantSweep);

static void BM_BandSpectrum(benchmark::State& state) {
    Model step = realize(ClosedFormModel::step(1.0));
    int n = (int)state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(band_spectrum(step, n, 0.0, 20.0));
}
BENCHMARK(BM_BandSpectrum)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
