#include <benchmark/benchmark.h>

#include <random>

#include "paralab/normest.hpp"
#include "paralab/signal.hpp"
#include "paralab/symbols.hpp"
#include "paralab/variation.hpp"

using namespace paralab;

namespace {

DiscreteSignal banded(const Grid& g, std::uint64_t seed) {
    return make_random_trig(g, -g.n / 4, g.n / 4, seed);
}

void BM_fft_roundtrip(benchmark::State& state) {
    Grid g(static_cast<int>(state.range(0)), 1.0);
    DiscreteSignal f = banded(g, 1);
    for (auto _ : state) {
        DiscreteSignal back = DiscreteSignal::from_spectrum(g, f.spectrum());
        benchmark::DoNotOptimize(back.samples().data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_fft_roundtrip)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_apply_rectangles(benchmark::State& state) {
    Grid g(static_cast<int>(state.range(0)), 4.0);
    auto sym = exp_staircase(static_cast<int>(state.range(1)));
    DiscreteSignal f = banded(g, 2), h = banded(g, 3);
    for (auto _ : state) {
        DiscreteSignal out = apply_bilinear(sym, f, h, BilinearMethod::Rectangles);
        benchmark::DoNotOptimize(out.samples().data());
    }
}
BENCHMARK(BM_apply_rectangles)->Args({512, 8})->Args({1024, 8})->Args({1024, 32})->Args({4096, 32});

void BM_apply_direct(benchmark::State& state) {
    Grid g(static_cast<int>(state.range(0)), 4.0);
    auto sym = exp_staircase(8);
    DiscreteSignal f = banded(g, 2), h = banded(g, 3);
    for (auto _ : state) {
        DiscreteSignal out = apply_bilinear(sym, f, h, BilinearMethod::Direct);
        benchmark::DoNotOptimize(out.samples().data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_apply_direct)->RangeMultiplier(2)->Range(128, 1024)->Complexity();

void BM_v_norm(benchmark::State& state) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss;
    FiniteSequence s;
    for (int i = 0; i < state.range(0); ++i) s.values.emplace_back(gauss(rng), gauss(rng));
    for (auto _ : state) benchmark::DoNotOptimize(v_norm(s, 2.5));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_v_norm)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void BM_maximal_function(benchmark::State& state) {
    Grid g(static_cast<int>(state.range(0)), 1.0);
    DiscreteSignal f = banded(g, 9);
    for (auto _ : state) {
        DiscreteSignal out = maximal_function(f);
        benchmark::DoNotOptimize(out.samples().data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_maximal_function)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_ascend_staircase(benchmark::State& state) {
    Grid g(static_cast<int>(state.range(0)), 4.0);
    TrilinearProbe probe{exp_staircase(8), ExponentTriple::make(3.0, 3.0, 3.0), g,
                         SearchBudget{1, 10, 0.0}};
    std::uint64_t seed = 0;
    for (auto _ : state) {
        NormEstimateReport rep = ascend(probe, seed++, false, 1);
        benchmark::DoNotOptimize(rep.best_ratio);
    }
}
BENCHMARK(BM_ascend_staircase)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
