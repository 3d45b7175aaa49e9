#pragma once

// Escape-time measurements separating inf |w_n| > 1 from inf |w_n| = 1.
//
// When inf |w_n| > 1 every orbit started on the sphere of radius eps leaves
// the ball of radius R*eps within a uniformly bounded number of steps. When
// inf |w_n| = 1 the escape time of eps*e_n grows without bound along a
// subsequence, which no conjugacy to 2I can allow. This module measures the
// phenomenon; it does not prove non-conjugacy.

#include "lpconj/lp_core.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace lpconj {

/// Smallest k >= 1 with ||D^k x||_p > radius, or nullopt if the orbit stays
/// within the radius for `cap` steps. Throws DomainError when
/// radius <= ||x||_p or cap == 0.
std::optional<std::uint64_t> escape_time(const DiagonalOperator& d, const FinSeq& x, double radius,
                                         std::uint64_t cap);

struct EscapeRow {
    Index index;
    /// nullopt: no escape within the cap.
    std::optional<std::uint64_t> escape_time;
};

struct EscapeProfile {
    WeightSeq weights;
    double p;
    double epsilon;
    double radius_factor;
    double radius;
    std::uint64_t cap;
    /// Sorted by index.
    std::vector<EscapeRow> rows;
    /// Heuristic: the smallest escape time in the last quarter of rows exceeds
    /// the largest in the first quarter (never-escaping orbits count as
    /// infinitely late, so an all-sentinel profile is flagged).
    bool divergence_flag;
};

/// Escape times of eps * e_n at radius radius_factor * eps, for each index.
/// Throws HypothesisError if inf |w_n| < 1, DomainError for eps <= 0,
/// radius_factor <= 1, empty or zero indices.
EscapeProfile escape_profile(const WeightSeq& w, double p, double epsilon, std::vector<Index> indices,
                             double radius_factor, std::uint64_t cap);

/// ceil(ln R / ln inf|w_n|) + 1; bounds every escape time when inf |w_n| > 1.
std::uint64_t uniform_escape_bound(double inf_modulus, double radius_factor);

} // namespace lpconj
