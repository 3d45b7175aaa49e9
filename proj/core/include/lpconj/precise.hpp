#pragma once

// High-precision reference evaluations for cross-checking the double path.
//
// Everything here follows the defining formulas literally: tail sums summed
// upward, powers subtracted directly. The extra digits, not a cleverer
// algorithm, are what make the result trustworthy. Link lpconj::precise.

#include "lpconj/lp_core.hpp"
#include "lpconj/warp_map.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <cstdlib>
#include <string>
#include <vector>

namespace lpconj::precise {

using Real = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultDigits = 50;

/// Decimal digits from LPCONJ_PRECISION, or `fallback` when unset or invalid.
inline unsigned digits_from_env(unsigned fallback = kDefaultDigits) {
    const char* v = std::getenv("LPCONJ_PRECISION");
    if (v == nullptr || *v == '\0') {
        return fallback;
    }
    char* end = nullptr;
    const unsigned long d = std::strtoul(v, &end, 10);
    if (*end != '\0' || d < 20 || d > 10000) {
        return fallback;
    }
    return static_cast<unsigned>(d);
}

/// Sets the working precision for the lifetime of the guard.
class ScopedDigits {
public:
    explicit ScopedDigits(unsigned digits) : saved_(Real::default_precision()) {
        Real::default_precision(digits);
    }
    ~ScopedDigits() { Real::default_precision(saved_); }
    ScopedDigits(const ScopedDigits&) = delete;
    ScopedDigits& operator=(const ScopedDigits&) = delete;

private:
    unsigned saved_;
};

inline Real modulus(Complex z) {
    const Real re = z.real();
    const Real im = z.imag();
    return sqrt(re * re + im * im);
}

/// t_hi^s - t_lo^s by direct subtraction at the current precision.
inline Real power_diff(double t_hi, double t_lo, double s) {
    const Real hi = t_hi;
    const Real lo = t_lo;
    const Real e = s;
    return pow(hi, e) - pow(lo, e);
}

/// The warp's defining formula, evaluated coordinate by coordinate.
inline std::vector<Complex> warp_forward(const ExponentSeq& exponents, const FinSeq& x) {
    const auto entries = x.entries();
    const Real p = x.p();
    std::vector<Real> powered;
    powered.reserve(entries.size());
    for (const auto& e : entries) {
        powered.push_back(pow(modulus(e.value), p));
    }
    std::vector<Complex> out;
    out.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        Real hi = 0;
        for (std::size_t k = i; k < entries.size(); ++k) {
            hi += powered[k];
        }
        const Real lo = hi - powered[i];
        const Real s = exponents.at(entries[i].index);
        const Real radicand = pow(hi, s) - pow(lo, s);
        const Real mod = pow(radicand, 1 / p);
        const Real scale = mod / modulus(entries[i].value);
        const Real re = Real(entries[i].value.real()) * scale;
        const Real im = Real(entries[i].value.imag()) * scale;
        out.emplace_back(re.convert_to<double>(), im.convert_to<double>());
    }
    return out;
}

/// Smallest k >= 1 with base^k > bound, by exact-enough logarithms.
inline std::uint64_t first_power_exceeding(const Real& base, const Real& bound) {
    Real k = ceil(log(bound) / log(base));
    if (k < 1) {
        k = 1;
    }
    while (pow(base, k) <= bound) {
        k += 1;
    }
    while (k > 1 && pow(base, k - 1) > bound) {
        k -= 1;
    }
    return k.convert_to<std::uint64_t>();
}

} // namespace lpconj::precise
