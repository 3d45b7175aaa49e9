#pragma once

// Composable conjugacies between diagonal operators.
//
// A ConjugacyMap Phi carries a certificate (source S, target T) asserting
// Phi(S x) = T Phi(x). "Forward" evaluation maps the source side to the
// target side. Maps are finite lists of invertible stages applied in order.

#include "lpconj/lp_core.hpp"
#include "lpconj/warp_map.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace lpconj {

struct WarpStage {
    ExponentSeq exponents;
    bool inverse = false;
    friend bool operator==(const WarpStage&, const WarpStage&) = default;
};

struct RotationStage {
    WeightSeq weights;
    bool inverse = false;
    friend bool operator==(const RotationStage&, const RotationStage&) = default;
};

using Stage = std::variant<WarpStage, RotationStage>;

Stage inverted(const Stage& stage);
FinSeq apply_stage(const Stage& stage, const FinSeq& x);
std::string describe(const Stage& stage);

enum class Direction { forward, inverse };

class ConjugacyMap {
public:
    /// No check that the stages realise the certificate; the builders below
    /// are the trusted constructors. Throws DomainError if source and target
    /// act on different l^p.
    ConjugacyMap(std::vector<Stage> stages, DiagonalOperator source, DiagonalOperator target);

    static ConjugacyMap identity(const DiagonalOperator& op) { return {{}, op, op}; }

    const std::vector<Stage>& stages() const noexcept { return stages_; }
    const DiagonalOperator& source() const noexcept { return source_; }
    const DiagonalOperator& target() const noexcept { return target_; }
    double p() const noexcept { return source_.p(); }

    /// Reversed stage list with every stage inverted; source and target swap.
    ConjugacyMap inverted() const;

private:
    std::vector<Stage> stages_;
    DiagonalOperator source_;
    DiagonalOperator target_;
};

FinSeq evaluate(const ConjugacyMap& m, const FinSeq& x, Direction direction = Direction::forward);

/// Phi with Phi(2x) = D_W Phi(x), for inf |w_n| > 1.
///
/// With rho = inf |w_n| and s_n = log_rho |w_n|, Phi = F_W o h^S o g where g
/// conjugates 2I to rho I: g = (h^{S'})^{-1} with S' = log_rho 2 when
/// rho <= 2, otherwise the equal map h^{S''} with S'' = log_2 rho (keeps every
/// warp exponent >= 1).
ConjugacyMap build_conjugacy_to_doubling(const WeightSeq& w, double p);

/// Phi with Phi(x/2) = D_W Phi(x), for inf |w_n| > 0 and sup |w_n| < 1.
///
/// Mirrors the doubling construction for the reciprocal weights: rho =
/// 1 / sup |w_n|, s_n = log_rho (1/|w_n|). Then h^S(x / rho) = D_|W| h^S(x),
/// g conjugates x/2 to x/rho, and F_W finishes the job.
ConjugacyMap build_conjugacy_to_halving(const WeightSeq& w, double p);

/// second o first. Requires first.target == second.source. Adjacent mutually
/// inverse stages cancel, so the stage list is the reduced word of the
/// concatenation (composition is exactly associative).
ConjugacyMap compose(const ConjugacyMap& first, const ConjugacyMap& second);

struct ScaleRange {
    double lo = 1e-3;
    double hi = 1e3;
};

struct DefectReport {
    std::size_t samples = 0;
    /// Relative defects ||Phi(Sx) - T Phi(x)||_p / ||T Phi(x)||_p.
    double max_defect = 0.0;
    double mean_defect = 0.0;
    /// Largest absolute defect ||Phi(Sx) - T Phi(x)||_p.
    double max_abs_defect = 0.0;
    FinSeq worst_witness;
};

/// Relative defect of the certificate at one point.
double conjugacy_defect_at(const ConjugacyMap& m, const FinSeq& x);

/// Draws `samples` vectors with supports of size 1-50 on indices 1-200 and
/// norms log-uniform over `range`; deterministic in `seed`.
DefectReport conjugacy_defect(const ConjugacyMap& m, std::size_t samples, std::uint64_t seed,
                              ScaleRange range = {});

} // namespace lpconj
