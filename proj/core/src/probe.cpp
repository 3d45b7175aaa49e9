#include "lpconj/probe.hpp"

#include "lpconj/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace lpconj {

std::optional<std::uint64_t> escape_time(const DiagonalOperator& d, const FinSeq& x, double radius,
                                         std::uint64_t cap) {
    require_same_exponent(d.p(), x.p(), "escape_time");
    if (!(radius > norm_p(x))) {
        throw DomainError("escape_time needs radius > ||x||_p");
    }
    if (cap == 0) {
        throw DomainError("escape_time needs an iteration cap >= 1");
    }
    FinSeq y = x;
    for (std::uint64_t k = 1; k <= cap; ++k) {
        FinSeq next = apply_diagonal(d, y);
        if (norm_p(next) > radius) {
            return k;
        }
        if (next == y) {
            return std::nullopt; // fixed point
        }
        y = std::move(next);
    }
    return std::nullopt;
}

EscapeProfile escape_profile(const WeightSeq& w, double p, double epsilon, std::vector<Index> indices,
                             double radius_factor, std::uint64_t cap) {
    checked_exponent(p);
    if (w.inf_modulus() < 1.0) {
        throw HypothesisError("escape profile needs inf |w_n| >= 1 (got " +
                              std::to_string(w.inf_modulus()) + ")");
    }
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw DomainError("escape profile needs epsilon > 0");
    }
    if (!(radius_factor > 1.0) || !std::isfinite(radius_factor)) {
        throw DomainError("escape profile needs radius factor > 1");
    }
    if (indices.empty()) {
        throw DomainError("escape profile needs at least one index");
    }
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    if (indices.front() == 0) {
        throw DomainError("indices start at 1");
    }

    const DiagonalOperator d(w, p);
    const double radius = radius_factor * epsilon;
    EscapeProfile profile{w, p, epsilon, radius_factor, radius, cap, {}, false};
    profile.rows.reserve(indices.size());
    for (Index n : indices) {
        profile.rows.push_back({n, escape_time(d, FinSeq::basis(p, n, epsilon), radius, cap)});
    }

    auto time_of = [](const EscapeRow& r) {
        return r.escape_time ? static_cast<double>(*r.escape_time)
                             : std::numeric_limits<double>::infinity();
    };
    const std::size_t quarter = std::max<std::size_t>(1, profile.rows.size() / 4);
    double first_max = -std::numeric_limits<double>::infinity();
    double last_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < quarter; ++i) {
        first_max = std::max(first_max, time_of(profile.rows[i]));
        last_min = std::min(last_min, time_of(profile.rows[profile.rows.size() - 1 - i]));
    }
    const bool all_sentinel = std::all_of(profile.rows.begin(), profile.rows.end(),
                                          [](const EscapeRow& r) { return !r.escape_time; });
    profile.divergence_flag = all_sentinel || last_min > first_max;
    return profile;
}

std::uint64_t uniform_escape_bound(double inf_modulus, double radius_factor) {
    if (!(inf_modulus > 1.0) || !(radius_factor > 1.0)) {
        throw DomainError("uniform escape bound needs inf |w_n| > 1 and radius factor > 1");
    }
    return static_cast<std::uint64_t>(std::ceil(std::log(radius_factor) / std::log(inf_modulus))) + 1;
}

} // namespace lpconj
