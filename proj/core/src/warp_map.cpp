#include "lpconj/warp_map.hpp"

#include "lpconj/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace lpconj {

namespace {

// Rounding in log|w_n| / log(rho) may land a hair below 1.
constexpr double kExponentSlack = 1e-12;

struct Range {
    double lo;
    double hi;
};

Range descriptor_range(const ExponentSeq::Descriptor& d) {
    return std::visit(
        [](const auto& v) -> Range {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ExponentSeq::Constant>) {
                return {v.value, v.value};
            } else if constexpr (std::is_same_v<T, ExponentSeq::List>) {
                Range r{v.tail, v.tail};
                for (double s : v.values) {
                    r.lo = std::min(r.lo, s);
                    r.hi = std::max(r.hi, s);
                }
                return r;
            } else if constexpr (std::is_same_v<T, ExponentSeq::Harmonic>) {
                return {std::min(v.c, v.c + v.a), std::max(v.c, v.c + v.a)};
            } else {
                if (!(v.base > 1.0) || !std::isfinite(v.base)) {
                    throw DomainError("log-modulus exponents need a base > 1");
                }
                if (v.weights.inf_modulus() <= 0.0) {
                    throw DomainError("log-modulus exponents need inf |w_n| > 0");
                }
                const double ln_base = std::log(v.base);
                const double a = std::log(v.weights.inf_modulus()) / ln_base;
                const double b = std::log(v.weights.sup_modulus()) / ln_base;
                return v.reciprocal ? Range{-b, -a} : Range{a, b};
            }
        },
        d);
}

Complex with_modulus(Complex z, double modulus) {
    return z / std::abs(z) * modulus;
}

double root_p(double v, double p) {
    if (p == 1.0) {
        return v;
    }
    if (p == 2.0) {
        return std::sqrt(v);
    }
    return std::pow(v, 1.0 / p);
}

} // namespace

// ---------------------------------------------------------------------------
// ExponentSeq

ExponentSeq::ExponentSeq(Descriptor d, std::optional<double> bound) : d_(std::move(d)) {
    const Range r = descriptor_range(d_);
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi)) {
        throw DomainError("exponent sequence must be bounded");
    }
    if (r.lo < 1.0 - kExponentSlack) {
        throw DomainError("exponent sequence needs s_n >= 1 for all n, inf is " + std::to_string(r.lo));
    }
    inf_ = std::max(1.0, r.lo);
    sup_ = std::max(1.0, r.hi);
    bound_ = bound.value_or(sup_);
    if (!std::isfinite(bound_) || bound_ < sup_) {
        throw DomainError("recorded bound r = " + std::to_string(bound_) + " is below sup s_n = " +
                          std::to_string(sup_));
    }
}

double ExponentSeq::at(Index n) const {
    if (n == 0) {
        throw DomainError("exponent index must be >= 1");
    }
    const double s = std::visit(
        [n](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return v.value;
            } else if constexpr (std::is_same_v<T, List>) {
                return n <= v.values.size() ? v.values[n - 1] : v.tail;
            } else if constexpr (std::is_same_v<T, Harmonic>) {
                return v.c + v.a / static_cast<double>(n);
            } else {
                const double s = std::log(std::abs(v.weights.at(n))) / std::log(v.base);
                return v.reciprocal ? -s : s;
            }
        },
        d_);
    return std::max(1.0, s);
}

int ExponentSeq::integer_bound() const { return static_cast<int>(std::ceil(bound_)); }

std::string_view ExponentSeq::kind() const noexcept {
    switch (d_.index()) {
    case 0:
        return "constant";
    case 1:
        return "list";
    case 2:
        return "harmonic";
    default:
        return "log_modulus";
    }
}

// ---------------------------------------------------------------------------
// Kernels

double power_gap(double t_lo, double gap, double s) {
    if (gap == 0.0) {
        return 0.0;
    }
    if (s == 1.0) {
        return gap;
    }
    const double t_hi = t_lo + gap;
    if (t_lo == 0.0) {
        return std::pow(t_hi, s);
    }
    // t_hi^s (1 - (t_lo/t_hi)^s) with log(t_lo/t_hi) = log1p(-gap/t_hi).
    return std::pow(t_hi, s) * -std::expm1(s * std::log1p(-gap / t_hi));
}

double stable_power_diff(double t_hi, double t_lo, double s) {
    if (!(t_lo >= 0.0) || !(t_hi >= t_lo)) {
        throw DomainError("stable_power_diff needs t_hi >= t_lo >= 0");
    }
    if (!(s >= 1.0)) {
        throw DomainError("stable_power_diff needs s >= 1");
    }
    if (t_hi == t_lo) {
        return 0.0;
    }
    // Sterbenz: the subtraction is exact whenever t_lo >= t_hi / 2.
    return power_gap(t_lo, t_hi - t_lo, s);
}

double root_gap(double t_lo, double lifted, double s) {
    if (lifted == 0.0) {
        return 0.0;
    }
    if (s == 1.0) {
        return lifted;
    }
    if (t_lo == 0.0) {
        return std::pow(lifted, 1.0 / s);
    }
    const double lo_s = std::pow(t_lo, s);
    const double ratio = lifted / lo_s;
    if (lo_s >= std::numeric_limits<double>::min() && std::isfinite(ratio)) {
        // (t_lo^s (1 + ratio))^{1/s} - t_lo = t_lo expm1(log1p(ratio) / s)
        return t_lo * std::expm1(std::log1p(ratio) / s);
    }
    return std::pow(lifted + lo_s, 1.0 / s) - t_lo;
}

// ---------------------------------------------------------------------------
// WarpMap

WarpMap::WarpMap(ExponentSeq exponents, double p)
    : exponents_(std::move(exponents)), p_(checked_exponent(p)) {}

FinSeq WarpMap::forward(const FinSeq& x) const {
    require_same_exponent(p_, x.p(), "warp_forward");
    const auto in = x.entries();
    std::vector<Entry> out(in.size());
    double tail = 0.0; // T_{n+1}
    for (std::size_t i = in.size(); i-- > 0;) {
        const Entry& e = in[i];
        const double gap = abs_pow(e.value, p_);
        const double s = exponents_.at(e.index);
        if (s == 1.0) {
            out[i] = e;
        } else {
            out[i] = {e.index, with_modulus(e.value, root_p(power_gap(tail, gap, s), p_))};
        }
        tail += gap;
    }
    std::erase_if(out, [](const Entry& e) { return e.value == Complex{}; });
    return from_sorted_entries(p_, std::move(out));
}

FinSeq WarpMap::inverse(const FinSeq& y) const {
    require_same_exponent(p_, y.p(), "warp_inverse");
    const auto in = y.entries();
    std::vector<Entry> out(in.size());
    double tail = 0.0; // T_{n+1} of the preimage
    for (std::size_t i = in.size(); i-- > 0;) {
        const Entry& e = in[i];
        const double lifted = abs_pow(e.value, p_);
        const double s = exponents_.at(e.index);
        if (s == 1.0) {
            out[i] = e;
            tail += lifted;
            continue;
        }
        const double gap = root_gap(tail, lifted, s);
        out[i] = {e.index, with_modulus(e.value, root_p(gap, p_))};
        tail += gap;
    }
    std::erase_if(out, [](const Entry& e) { return e.value == Complex{}; });
    return from_sorted_entries(p_, std::move(out));
}

FinSeq warp_forward(const WarpMap& h, const FinSeq& x) { return h.forward(x); }
FinSeq warp_inverse(const WarpMap& h, const FinSeq& y) { return h.inverse(y); }

std::vector<RadicandInfo> radicand_diagnostics(const WarpMap& h, const FinSeq& x) {
    require_same_exponent(h.p(), x.p(), "radicand_diagnostics");
    const auto in = x.entries();
    std::vector<RadicandInfo> out(in.size());
    double tail = 0.0;
    for (std::size_t i = in.size(); i-- > 0;) {
        const double gap = abs_pow(in[i].value, h.p());
        const double s = h.exponents().at(in[i].index);
        const double hi = tail + gap;
        const double radicand = power_gap(tail, gap, s);
        const double sum = std::pow(hi, s) + std::pow(tail, s);
        out[i] = {in[i].index, s, hi, tail, radicand,
                  radicand > 0.0 ? s * sum / radicand : std::numeric_limits<double>::infinity()};
        tail = hi;
    }
    return out;
}

ExponentSeq exponents_from_weights(const WeightSeq& w, double rho) {
    if (!(rho > 1.0)) {
        throw HypothesisError("exponents_from_weights needs rho > 1");
    }
    if (w.has_zero_term() || w.inf_modulus() <= 0.0) {
        throw HypothesisError("exponents_from_weights needs every w_n != 0");
    }
    if (w.inf_modulus() < rho) {
        throw HypothesisError("exponents_from_weights needs |w_n| >= rho for all n (inf |w_n| = " +
                              std::to_string(w.inf_modulus()) + ")");
    }
    return ExponentSeq(ExponentSeq::LogModulus{w, rho, false});
}

ExponentSeq exponents_from_reciprocal_weights(const WeightSeq& w, double rho) {
    if (!(rho > 1.0)) {
        throw HypothesisError("exponents_from_reciprocal_weights needs rho > 1");
    }
    if (w.has_zero_term() || w.inf_modulus() <= 0.0) {
        throw HypothesisError("exponents_from_reciprocal_weights needs inf |w_n| > 0");
    }
    // rho is typically 1 / sup |w_n|, which need not round-trip exactly.
    if (w.sup_modulus() * rho > 1.0 + kExponentSlack) {
        throw HypothesisError("exponents_from_reciprocal_weights needs |w_n| <= 1/rho for all n");
    }
    return ExponentSeq(ExponentSeq::LogModulus{w, rho, true});
}

FinSeq naive_power_map(const ExponentSeq& s, const FinSeq& x) {
    std::vector<Entry> out;
    out.reserve(x.support_size());
    for (const auto& e : x.entries()) {
        const Complex v = with_modulus(e.value, std::pow(std::abs(e.value), s.at(e.index)));
        if (v != Complex{}) {
            out.push_back({e.index, v});
        }
    }
    return from_sorted_entries(x.p(), std::move(out));
}

} // namespace lpconj
