#include <benchmark/benchmark.h>

#include "seqlab/catalog.hpp"

using namespace seqlab;

static void BM_XiEval(benchmark::State& state) {
    auto catalog = standard_catalog();
    const WeightedClass& c = *catalog[0].members;
    FinStr x(c.alphabet());
    for (int i = 0; i < state.range(0); ++i) x.push_back(i & 1);
    for (auto _ : state) {
        Rat v = xi_eval(c, x);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_XiEval)->Arg(8)->Arg(32)->Arg(128);

static void BM_CheckSemimeasure(benchmark::State& state) {
    Semimeasure sticky = markov({Rat(1, 2), Rat(1, 2)},
                                {{Rat(9, 10), Rat(1, 10)}, {Rat(1, 10), Rat(9, 10)}});
    for (auto _ : state) {
        SemimeasureCheck c = check_semimeasure(sticky, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(c.is_semimeasure);
    }
}
BENCHMARK(BM_CheckSemimeasure)->Arg(6)->Arg(8);

static void BM_PosteriorUpdate(benchmark::State& state) {
    auto catalog = standard_catalog();
    auto c = catalog[2].members;  // markov_mix
    for (auto _ : state) {
        MixtureState s = MixtureState::initial(c);
        for (int t = 0; t < 64; ++t) s = s.advanced(t & 1);
        benchmark::DoNotOptimize(s.posterior().front());
    }
}
BENCHMARK(BM_PosteriorUpdate);

BENCHMARK_MAIN();
