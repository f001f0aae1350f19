#include <benchmark/benchmark.h>

#include "acpat/catalog.hpp"
#include "acpat/instance.hpp"
#include "acpat/occurrence.hpp"
#include "acpat/pattern.hpp"

using namespace acpat;

static void BM_enforce_ac(benchmark::State& state) {
    const Pattern& p = builtin_pattern(PatternName::BTP);
    auto g = gen_pattern_free_instance(p, static_cast<int>(state.range(0)), 6, 0.4, 7);
    for (auto _ : state) {
        auto res = enforce_ac(g.instance);
        benchmark::DoNotOptimize(res.trace.removals.size());
    }
}
BENCHMARK(BM_enforce_ac)->Arg(6)->Arg(10)->Arg(14);

static void BM_occurs_in_instance(benchmark::State& state) {
    const Pattern& p = builtin_pattern(PatternName::EMC);
    auto g = gen_pattern_free_instance(builtin_pattern(PatternName::BTP),
                                       static_cast<int>(state.range(0)), 5, 0.5, 11);
    VarOrder vo = identity_var_order(g.instance.num_variables());
    DomOrder dord = universe_dom_order(g.instance.universe());
    for (auto _ : state) {
        auto res = occurs_in_instance(p, g.instance, vo, dord);
        benchmark::DoNotOptimize(res.occurs);
    }
}
BENCHMARK(BM_occurs_in_instance)->Arg(5)->Arg(8);

BENCHMARK_MAIN();
