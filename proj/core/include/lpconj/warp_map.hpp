#pragma once

// The tail-sum warp h^S_p on l^p.
//
// For a bounded exponent sequence S = {s_n}, s_n >= 1, the warp sends x to
// the vector whose n-th coordinate has the phase of x_n and modulus
//
//     ( T_n^{s_n} - T_{n+1}^{s_n} )^{1/p},     T_n = sum_{k >= n} |x_k|^p.
//
// It is a homeomorphism of l^p, maps finitely supported vectors onto
// finitely supported vectors with the same support, and satisfies
// h(t x)_n = t^{s_n} h(x)_n for t > 0.

#include "lpconj/lp_core.hpp"

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace lpconj {

/// A bounded real sequence {s_n} with s_n >= 1 and a recorded bound r >= sup s_n.
class ExponentSeq {
public:
    struct Constant {
        double value;
        friend bool operator==(const Constant&, const Constant&) = default;
    };
    struct List {
        std::vector<double> values;
        double tail;
        friend bool operator==(const List&, const List&) = default;
    };
    /// s_n = c + a / n.
    struct Harmonic {
        double c;
        double a;
        friend bool operator==(const Harmonic&, const Harmonic&) = default;
    };
    /// s_n = log_base |w_n|, or log_base (1 / |w_n|) when `reciprocal` is set.
    struct LogModulus {
        WeightSeq weights;
        double base;
        bool reciprocal = false;
        friend bool operator==(const LogModulus&, const LogModulus&) = default;
    };
    using Descriptor = std::variant<Constant, List, Harmonic, LogModulus>;

    /// Throws DomainError if some s_n < 1, the sequence is unbounded, or the
    /// supplied bound is below sup s_n. Without a bound, r = sup s_n.
    explicit ExponentSeq(Descriptor d, std::optional<double> bound = std::nullopt);

    static ExponentSeq constant(double s) { return ExponentSeq(Constant{s}); }

    double at(Index n) const;
    double inf() const noexcept { return inf_; }
    double sup() const noexcept { return sup_; }
    double bound() const noexcept { return bound_; }
    /// ceil(r): the integer upper bound used by the power-difference estimates.
    int integer_bound() const;
    /// s_n == 1 for every n.
    bool is_identity() const noexcept { return inf_ == 1.0 && sup_ == 1.0; }

    std::string_view kind() const noexcept;
    const Descriptor& descriptor() const noexcept { return d_; }

    friend bool operator==(const ExponentSeq& a, const ExponentSeq& b) { return a.d_ == b.d_; }

private:
    Descriptor d_;
    double inf_ = 1.0;
    double sup_ = 1.0;
    double bound_ = 1.0;
};

/// t_hi^s - t_lo^s for t_hi >= t_lo >= 0 and s >= 1, free of cancellation
/// when t_lo / t_hi is close to 1. Throws DomainError otherwise.
double stable_power_diff(double t_hi, double t_lo, double s);

/// (t_lo + gap)^s - t_lo^s, with the gap supplied exactly.
double power_gap(double t_lo, double gap, double s);

/// The gap g >= 0 with (t_lo + g)^s = lifted + t_lo^s.
double root_gap(double t_lo, double lifted, double s);

class WarpMap {
public:
    WarpMap(ExponentSeq exponents, double p);

    const ExponentSeq& exponents() const noexcept { return exponents_; }
    double p() const noexcept { return p_; }

    FinSeq forward(const FinSeq& x) const;
    FinSeq inverse(const FinSeq& y) const;

    friend bool operator==(const WarpMap&, const WarpMap&) = default;

private:
    ExponentSeq exponents_;
    double p_;
};

FinSeq warp_forward(const WarpMap& h, const FinSeq& x);
FinSeq warp_inverse(const WarpMap& h, const FinSeq& y);

/// Per-coordinate view of the radicand T_n^s - T_{n+1}^s.
struct RadicandInfo {
    Index index;
    double exponent;
    double tail_hi;
    double tail_lo;
    double radicand;
    /// Relative condition number of the naive subtraction,
    /// s (T_n^s + T_{n+1}^s) / (T_n^s - T_{n+1}^s).
    double condition;
};

std::vector<RadicandInfo> radicand_diagnostics(const WarpMap& h, const FinSeq& x);

/// s_n = log_rho |w_n|. Requires rho > 1 and |w_n| >= rho for all n.
ExponentSeq exponents_from_weights(const WeightSeq& w, double rho);

/// s_n = log_rho (1 / |w_n|). Requires rho > 1 and 0 < |w_n| <= 1 / rho.
ExponentSeq exponents_from_reciprocal_weights(const WeightSeq& w, double rho);

/// The coordinatewise power map x_n -> (x_n / |x_n|) |x_n|^{s_n}.
///
/// A homeomorphism on every finite-dimensional coordinate block but not a
/// continuous map of l^p; kept as the counterexample the tail-sum warp is
/// measured against.
FinSeq naive_power_map(const ExponentSeq& s, const FinSeq& x);

} // namespace lpconj
