#include "lpconj/sampling.hpp"

#include "lpconj/error.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <numeric>

namespace lpconj {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

double Rng::log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
}

std::uint64_t Rng::integer(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo + 1;
    if (span == 0) {
        return engine_();
    }
    // Rejection keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t r = 0;
    do {
        r = engine_();
    } while (r >= limit);
    return lo + r % span;
}

FinSeq random_finseq(Rng& rng, double p, const SamplingPlan& plan) {
    if (plan.min_support > plan.max_support || plan.max_support > plan.max_index ||
        !(plan.norm_lo > 0.0) || !(plan.norm_hi >= plan.norm_lo) || !(plan.modulus_spread > 0.0)) {
        throw DomainError("inconsistent sampling plan");
    }
    const auto k = static_cast<std::size_t>(rng.integer(plan.min_support, plan.max_support));
    std::vector<Index> pool(plan.max_index);
    std::iota(pool.begin(), pool.end(), Index{1});
    for (std::size_t i = 0; i < k; ++i) {
        std::swap(pool[i], pool[rng.integer(i, pool.size() - 1)]);
    }
    std::vector<Entry> entries;
    entries.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double modulus = rng.log_uniform(plan.modulus_spread, 1.0);
        const double phase = rng.uniform(-std::numbers::pi, std::numbers::pi);
        entries.push_back({pool[i], std::polar(modulus, phase)});
    }
    FinSeq x(p, std::move(entries));
    if (x.empty()) {
        return x;
    }
    const double target = rng.log_uniform(plan.norm_lo, plan.norm_hi);
    return x.scaled(target / norm_p(x));
}

} // namespace lpconj
