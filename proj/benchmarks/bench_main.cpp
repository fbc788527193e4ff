#include <benchmark/benchmark.h>

#include "jeq/canonical.hpp"
#include "jeq/classify.hpp"
#include "jeq/construct.hpp"
#include "jeq/search.hpp"

using namespace jeq;

static void BM_RankRoundTrip(benchmark::State& state) {
    const GraphContext ctx{static_cast<int>(state.range(0)), 3};
    const auto order = binomial(ctx.n, 3);
    for (auto _ : state)
        for (std::int64_t r = 0; r < order; ++r) benchmark::DoNotOptimize(rank(unrank(r, ctx), ctx));
    state.SetItemsProcessed(state.iterations() * order);
}
BENCHMARK(BM_RankRoundTrip)->Arg(12)->Arg(24);

static void BM_IsEquitable(benchmark::State& state) {
    const auto p = pi2(PairedBipartition::standard(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(is_equitable(p).equitable);
}
BENCHMARK(BM_IsEquitable)->Arg(4)->Arg(8)->Arg(12);

static void BM_CanonicalForm(benchmark::State& state) {
    const auto p = pi3(PairedBipartition::standard(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(canonical_form(p));
}
BENCHMARK(BM_CanonicalForm)->Arg(4)->Arg(6);

static void BM_Recognize(benchmark::State& state) {
    const auto p = pi1(PairedBipartition::standard(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(recognize(p).certified);
}
BENCHMARK(BM_Recognize)->Arg(4)->Arg(8);

static void BM_SearchN8(benchmark::State& state) {
    SearchProblem prob;
    prob.n = 8;
    prob.q = {{{9, 6}, {8, 7}}};
    prob.spectral = state.range(0) != 0;
    for (auto _ : state) benchmark::DoNotOptimize(enumerate(prob).solutions.size());
}
BENCHMARK(BM_SearchN8)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
