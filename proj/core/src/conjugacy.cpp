#include "lpconj/conjugacy.hpp"

#include "lpconj/error.hpp"
#include "lpconj/rotation.hpp"
#include "lpconj/sampling.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace lpconj {

Stage inverted(const Stage& stage) {
    return std::visit(
        [](auto s) -> Stage {
            s.inverse = !s.inverse;
            return s;
        },
        stage);
}

FinSeq apply_stage(const Stage& stage, const FinSeq& x) {
    if (const auto* w = std::get_if<WarpStage>(&stage)) {
        const WarpMap h(w->exponents, x.p());
        return w->inverse ? h.inverse(x) : h.forward(x);
    }
    const auto& r = std::get<RotationStage>(stage);
    return r.inverse ? rotation_inverse(r.weights, x) : rotation_forward(r.weights, x);
}

std::string describe(const Stage& stage) {
    std::ostringstream os;
    if (const auto* w = std::get_if<WarpStage>(&stage)) {
        os << (w->inverse ? "warp^-1" : "warp") << "[" << w->exponents.kind() << "]";
    } else {
        const auto& r = std::get<RotationStage>(stage);
        os << (r.inverse ? "rotation^-1" : "rotation") << "[" << r.weights.kind() << "]";
    }
    return os.str();
}

ConjugacyMap::ConjugacyMap(std::vector<Stage> stages, DiagonalOperator source, DiagonalOperator target)
    : stages_(std::move(stages)), source_(std::move(source)), target_(std::move(target)) {
    require_same_exponent(source_.p(), target_.p(), "conjugacy certificate");
}

ConjugacyMap ConjugacyMap::inverted() const {
    std::vector<Stage> out;
    out.reserve(stages_.size());
    for (auto it = stages_.rbegin(); it != stages_.rend(); ++it) {
        out.push_back(lpconj::inverted(*it));
    }
    return {std::move(out), target_, source_};
}

FinSeq evaluate(const ConjugacyMap& m, const FinSeq& x, Direction direction) {
    require_same_exponent(m.p(), x.p(), "evaluate");
    FinSeq y = x;
    if (direction == Direction::forward) {
        for (const auto& s : m.stages()) {
            y = apply_stage(s, y);
        }
    } else {
        const auto& stages = m.stages();
        for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
            y = apply_stage(inverted(*it), y);
        }
    }
    return y;
}

namespace {

// A stage taking multiplication by 2 to multiplication by rho.
Stage doubling_to_rho(double rho) {
    if (rho <= 2.0) {
        return WarpStage{ExponentSeq::constant(std::log(2.0) / std::log(rho)), true};
    }
    return WarpStage{ExponentSeq::constant(std::log(rho) / std::log(2.0)), false};
}

} // namespace

ConjugacyMap build_conjugacy_to_doubling(const WeightSeq& w, double p) {
    checked_exponent(p);
    const double rho = w.inf_modulus();
    if (!(rho > 1.0)) {
        throw HypothesisError("inf modulus <= 1: conjugacy to 2I requires inf |w_n| > 1 (got " +
                              std::to_string(rho) + ")");
    }
    std::vector<Stage> stages{
        doubling_to_rho(rho),
        WarpStage{exponents_from_weights(w, rho), false},
        RotationStage{w, false},
    };
    return {std::move(stages), DiagonalOperator::scalar(2.0, p), DiagonalOperator(w, p)};
}

ConjugacyMap build_conjugacy_to_halving(const WeightSeq& w, double p) {
    checked_exponent(p);
    if (!(w.inf_modulus() > 0.0)) {
        throw HypothesisError("inf modulus = 0: conjugacy to I/2 requires inf |w_n| > 0");
    }
    if (!(w.sup_modulus() < 1.0)) {
        throw HypothesisError("sup modulus >= 1: conjugacy to I/2 requires sup |w_n| < 1 (got " +
                              std::to_string(w.sup_modulus()) + ")");
    }
    const double rho = 1.0 / w.sup_modulus();
    std::vector<Stage> stages{
        doubling_to_rho(rho),
        WarpStage{exponents_from_reciprocal_weights(w, rho), false},
        RotationStage{w, false},
    };
    return {std::move(stages), DiagonalOperator::scalar(0.5, p), DiagonalOperator(w, p)};
}

ConjugacyMap compose(const ConjugacyMap& first, const ConjugacyMap& second) {
    if (!(first.target() == second.source())) {
        throw DomainError("compose: certificate mismatch, first target (" +
                          std::string(first.target().weights().kind()) +
                          ") differs from second source (" +
                          std::string(second.source().weights().kind()) + ")");
    }
    std::vector<Stage> out;
    out.reserve(first.stages().size() + second.stages().size());
    auto push = [&out](const Stage& s) {
        if (!out.empty() && out.back() == inverted(s)) {
            out.pop_back();
        } else {
            out.push_back(s);
        }
    };
    for (const auto& s : first.stages()) {
        push(s);
    }
    for (const auto& s : second.stages()) {
        push(s);
    }
    return {std::move(out), first.source(), second.target()};
}

namespace {

struct Defect {
    double absolute;
    double relative;
};

Defect measure(const ConjugacyMap& m, const FinSeq& x) {
    const FinSeq lhs = evaluate(m, apply_diagonal(m.source(), x));
    const FinSeq rhs = apply_diagonal(m.target(), evaluate(m, x));
    const double diff = norm_p(subtract(lhs, rhs));
    const double scale = norm_p(rhs);
    return {diff, scale > 0.0 ? diff / scale : diff};
}

} // namespace

double conjugacy_defect_at(const ConjugacyMap& m, const FinSeq& x) { return measure(m, x).relative; }

DefectReport conjugacy_defect(const ConjugacyMap& m, std::size_t samples, std::uint64_t seed,
                              ScaleRange range) {
    SamplingPlan plan;
    plan.norm_lo = range.lo;
    plan.norm_hi = range.hi;
    DefectReport report{samples, 0.0, 0.0, 0.0, FinSeq(m.p())};
    double total = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        Rng rng(seed, i);
        const FinSeq x = random_finseq(rng, m.p(), plan);
        const Defect d = measure(m, x);
        total += d.relative;
        report.max_abs_defect = std::max(report.max_abs_defect, d.absolute);
        if (i == 0 || d.relative > report.max_defect) {
            report.max_defect = d.relative;
            report.worst_witness = x;
        }
    }
    report.mean_defect = samples > 0 ? total / static_cast<double>(samples) : 0.0;
    // total / samples can overshoot max by an ulp.
    report.mean_defect = std::min(report.mean_defect, report.max_defect);
    return report;
}

} // namespace lpconj
