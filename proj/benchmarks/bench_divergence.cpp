#include <benchmark/benchmark.h>

#include "seqlab/catalog.hpp"
#include "seqlab/losses.hpp"

using namespace seqlab;

static void BM_CumulativeDivergence(benchmark::State& state) {
    auto catalog = standard_catalog();
    auto cls = catalog[0].members;  // ber_pair
    Semimeasure mu = cls->models[1];
    Semimeasure xi = mixture_semimeasure(cls);
    LossMatrix loss = LossMatrix::zero_one(2);
    FinStr eps(cls->alphabet());
    for (auto _ : state) {
        DivergenceLedger ledger = cumulative_divergence(
            mu, xi, eps, static_cast<int>(state.range(0)), all_distance_kinds(), &loss);
        benchmark::DoNotOptimize(ledger.rhs);
    }
}
BENCHMARK(BM_CumulativeDivergence)->Arg(6)->Arg(10);

static void BM_MonteCarloDivergence(benchmark::State& state) {
    auto catalog = standard_catalog();
    auto cls = catalog[0].members;
    Semimeasure mu = cls->models[1];
    Semimeasure xi = mixture_semimeasure(cls);
    FinStr eps(cls->alphabet());
    for (auto _ : state) {
        MonteCarloEstimate est = monte_carlo_divergence(mu, xi, eps, 16, 256, 1,
                                                        {DistanceKind::KL});
        benchmark::DoNotOptimize(est.rhs_mean);
    }
}
BENCHMARK(BM_MonteCarloDivergence);

