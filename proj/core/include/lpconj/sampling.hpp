#pragma once

// Deterministic random draws for the verification harness. Each sample gets
// its own stream derived from (seed, sample index), so results do not depend
// on evaluation order.

#include "lpconj/lp_core.hpp"

#include <cstdint>
#include <random>

namespace lpconj {

class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next() { return engine_(); }
    /// Uniform on [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    /// exp of a uniform draw on [ln lo, ln hi]; lo, hi > 0.
    double log_uniform(double lo, double hi);
    /// Uniform integer in [lo, hi].
    std::uint64_t integer(std::uint64_t lo, std::uint64_t hi);

private:
    std::mt19937_64 engine_;
};

/// Distribution of random finitely supported vectors.
struct SamplingPlan {
    std::size_t min_support = 1;
    std::size_t max_support = 50;
    /// Support indices are drawn without replacement from 1..max_index.
    Index max_index = 200;
    /// Coordinate moduli before normalisation are log-uniform on
    /// [modulus_spread, 1].
    double modulus_spread = 1e-3;
    /// Final l^p norm, log-uniform on [norm_lo, norm_hi].
    double norm_lo = 1e-3;
    double norm_hi = 1e3;
};

FinSeq random_finseq(Rng& rng, double p, const SamplingPlan& plan = {});

} // namespace lpconj
