#include "lpconj/rotation.hpp"

#include "lpconj/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace lpconj {

PhaseWarp::PhaseWarp(Complex w) : w_(w) {
    if (w == Complex{}) {
        return;
    }
    const double m = std::abs(w);
    if (std::abs(m - 1.0) <= 8 * std::numeric_limits<double>::epsilon()) {
        throw HypothesisError("phase warp needs |w| != 1 (got |w| = 1)");
    }
    theta_ = std::arg(w);
    if (theta_ == -std::numbers::pi) {
        theta_ = std::numbers::pi;
    }
    log_mod_ = std::log(m);
}

Complex PhaseWarp::rotate(Complex z, double sign) const {
    if (is_identity() || z == Complex{}) {
        return z;
    }
    const double m = std::abs(z);
    if (m == 0.0) {
        // |z| underflowed; f_w is continuous at 0 with f_w(0) = 0.
        return z;
    }
    const double angle = sign * theta_ * (std::log(m) / log_mod_);
    return z * std::polar(1.0, angle);
}

Complex phase_warp(const PhaseWarp& pw, Complex z) { return pw(z); }
Complex phase_warp_inverse(const PhaseWarp& pw, Complex z) { return pw.inverse(z); }

namespace {

FinSeq rotate_all(const WeightSeq& w, const FinSeq& x, bool inverse) {
    if (w.has_unimodular_term()) {
        throw HypothesisError("phase rotation needs |w_n| != 1 for every n with w_n != 0");
    }
    if (w.is_nonnegative_real()) {
        return x;
    }
    std::vector<Entry> out;
    out.reserve(x.support_size());
    for (const auto& e : x.entries()) {
        const PhaseWarp f(w.at(e.index));
        out.push_back({e.index, inverse ? f.inverse(e.value) : f(e.value)});
    }
    return from_sorted_entries(x.p(), std::move(out));
}

} // namespace

FinSeq rotation_forward(const WeightSeq& w, const FinSeq& x) { return rotate_all(w, x, false); }
FinSeq rotation_inverse(const WeightSeq& w, const FinSeq& x) { return rotate_all(w, x, true); }

} // namespace lpconj
