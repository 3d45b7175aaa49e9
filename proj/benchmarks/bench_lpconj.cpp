#include "lpconj/conjugacy.hpp"
#include "lpconj/probe.hpp"
#include "lpconj/sampling.hpp"
#include "lpconj/warp_map.hpp"

#include <benchmark/benchmark.h>

using namespace lpconj;

namespace {

FinSeq sample(std::size_t support, double p) {
    Rng rng(7);
    SamplingPlan plan;
    plan.min_support = plan.max_support = support;
    plan.max_index = 4 * support;
    return random_finseq(rng, p, plan);
}

ExponentSeq exponents() {
    std::vector<double> v;
    for (int n = 1; n <= 256; ++n) v.push_back(1.0 + 3.0 * ((n * 37) % 101) / 101.0);
    return ExponentSeq(ExponentSeq::List{std::move(v), 2.0});
}

void BM_WarpForward(benchmark::State& state) {
    const FinSeq x = sample(static_cast<std::size_t>(state.range(0)), 1.5);
    const WarpMap h(exponents(), 1.5);
    for (auto _ : state) benchmark::DoNotOptimize(h.forward(x));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WarpForward)->Arg(8)->Arg(64)->Arg(512);

void BM_WarpInverse(benchmark::State& state) {
    const WarpMap h(exponents(), 1.5);
    const FinSeq y = h.forward(sample(static_cast<std::size_t>(state.range(0)), 1.5));
    for (auto _ : state) benchmark::DoNotOptimize(h.inverse(y));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WarpInverse)->Arg(8)->Arg(64)->Arg(512);

void BM_ConjugacyEvaluate(benchmark::State& state) {
    const auto m = build_conjugacy_to_doubling(WeightSeq::harmonic(Complex(0, 2), 1.0), 2.0);
    const FinSeq x = sample(static_cast<std::size_t>(state.range(0)), 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(m, x));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ConjugacyEvaluate)->Arg(8)->Arg(64)->Arg(512);

void BM_EscapeTime(benchmark::State& state) {
    const auto n = static_cast<Index>(state.range(0));
    const DiagonalOperator d(WeightSeq::harmonic(1.0, 1.0), 2.0);
    const FinSeq x(2.0, {{n, 0.1}});
    for (auto _ : state) benchmark::DoNotOptimize(escape_time(d, x, 0.2, 1000000));
}
BENCHMARK(BM_EscapeTime)->Arg(10)->Arg(1000)->Arg(100000);

} // namespace

BENCHMARK_MAIN();
