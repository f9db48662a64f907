#include <benchmark/benchmark.h>

#include "seqlab/machines.hpp"

using namespace seqlab;

static void BM_EnumK(benchmark::State& state) {
    MachineRegistry reg = canonical_registry(Alphabet(2));
    FinStr y = FinStr::parse(Alphabet(2), "10110");
    for (auto _ : state) {
        KResult k = enum_K(reg, y, static_cast<int>(state.range(0)), 2000);
        benchmark::DoNotOptimize(k.value);
    }
}
BENCHMARK(BM_EnumK)->Arg(12)->Arg(16);

static void BM_EnumMLower(benchmark::State& state) {
    MachineRegistry reg = canonical_registry(Alphabet(2));
    FinStr x = FinStr::parse(Alphabet(2), "000");
    for (auto _ : state) {
        Rat m = enum_M_lower(reg, x, static_cast<int>(state.range(0)), 2000);
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(BM_EnumMLower)->Arg(12)->Arg(16);

static void BM_EnumKstar(benchmark::State& state) {
    MachineRegistry reg = canonical_registry(Alphabet(2));
    FinStr x = FinStr::parse(Alphabet(2), "000001");
    FinStr y = numeral(Alphabet(2), 5);
    for (auto _ : state) {
        KstarResult k = enum_Kstar(reg, y, x, 12, 2000);
        benchmark::DoNotOptimize(k.value);
    }
}
BENCHMARK(BM_EnumKstar);

static void BM_InduceCorrectSet(benchmark::State& state) {
    MachineRegistry reg = canonical_registry(Alphabet(2));
    for (auto _ : state) {
        CorrectSet set = induce_correct_set(reg, 8, 500, 3);
        benchmark::DoNotOptimize(set.size());
    }
}
BENCHMARK(BM_InduceCorrectSet);

