#pragma once

// Sequence-space arithmetic on finitely supported vectors of l^p, 1 <= p < inf.
//
// Every vector handled by the library is finitely supported; the set of such
// vectors is dense in l^p and is mapped onto itself by every conjugacy built
// here, so all constructions are exact on it up to floating-point rounding.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace lpconj {

using Complex = std::complex<double>;
using Index = std::uint64_t;

/// Throws DomainError unless 1 <= p < inf.
double checked_exponent(double p);

struct Entry {
    Index index;
    Complex value;

    friend bool operator==(const Entry&, const Entry&) = default;
};

/// A finitely supported complex sequence in l^p.
///
/// Entries are kept sorted by index; zero values are never stored and indices
/// start at 1.
class FinSeq {
public:
    /// The zero vector of l^p.
    explicit FinSeq(double p);

    /// Builds from unordered entries. Zero values are dropped. Throws
    /// DomainError on index 0, duplicate indices or non-finite values.
    FinSeq(double p, std::vector<Entry> entries);

    static FinSeq basis(double p, Index n, Complex t = 1.0);

    double p() const noexcept { return p_; }
    std::span<const Entry> entries() const noexcept { return entries_; }
    std::size_t support_size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    /// Largest support index, 0 for the zero vector.
    Index max_index() const noexcept { return entries_.empty() ? 0 : entries_.back().index; }

    Complex operator[](Index n) const;

    FinSeq scaled(Complex t) const;

    friend bool operator==(const FinSeq&, const FinSeq&) = default;

private:
    struct Sorted {};
    FinSeq(Sorted, double p, std::vector<Entry> entries);

    double p_;
    std::vector<Entry> entries_;

    friend FinSeq from_sorted_entries(double p, std::vector<Entry> entries);
};

/// Builds a FinSeq from entries already sorted by strictly increasing index
/// and all nonzero. Checked in debug builds only; used by the evaluators,
/// which preserve support order.
FinSeq from_sorted_entries(double p, std::vector<Entry> entries);

/// Suffix sums T_n = sum_{k >= n} |x_k|^p.
class TailSums {
public:
    explicit TailSums(const FinSeq& x);

    /// T_n for any n >= 1 (constant across gaps in the support, 0 past it).
    double at(Index n) const;
    Index max_index() const noexcept { return max_index_; }
    /// (support index, T_index) pairs in increasing index order.
    std::span<const std::pair<Index, double>> values() const noexcept { return values_; }

private:
    std::vector<std::pair<Index, double>> values_;
    Index max_index_ = 0;
};

double norm_p(const FinSeq& x);

/// Summed from the largest index downward, T_n = |x_n|^p + T_{n+1}.
TailSums tail_sums(const FinSeq& x);

Complex coordinate(const FinSeq& x, Index n);

/// |z|^p with the p = 1 and p = 2 cases evaluated without pow().
double abs_pow(Complex z, double p);

/// x + y; both must share p.
FinSeq add(const FinSeq& x, const FinSeq& y);
/// x - y; both must share p.
FinSeq subtract(const FinSeq& x, const FinSeq& y);

struct Truncation {
    FinSeq kept;
    /// l^p norm of the discarded coordinates.
    double discarded_norm;
};

/// Keeps coordinates with index <= last; reports what was dropped.
Truncation truncate(const FinSeq& x, Index last);

// ---------------------------------------------------------------------------
// Weight sequences and diagonal operators
// ---------------------------------------------------------------------------

/// A bounded complex sequence {w_n} given by a closed-form descriptor whose
/// infimum and supremum of |w_n| are computable exactly.
class WeightSeq {
public:
    struct Constant {
        Complex value;
        friend bool operator==(const Constant&, const Constant&) = default;
    };
    /// w_1..w_m from `values`, then `tail` for every n > m.
    struct List {
        std::vector<Complex> values;
        Complex tail;
        friend bool operator==(const List&, const List&) = default;
    };
    /// w_n = c + a / n.
    struct Harmonic {
        Complex c;
        Complex a;
        friend bool operator==(const Harmonic&, const Harmonic&) = default;
    };
    using Descriptor = std::variant<Constant, List, Harmonic>;

    explicit WeightSeq(Descriptor d);

    static WeightSeq constant(Complex c) { return WeightSeq(Constant{c}); }
    static WeightSeq list(std::vector<Complex> values, Complex tail) {
        return WeightSeq(List{std::move(values), tail});
    }
    static WeightSeq harmonic(Complex c, Complex a) { return WeightSeq(Harmonic{c, a}); }

    Complex at(Index n) const;
    double inf_modulus() const noexcept { return inf_; }
    double sup_modulus() const noexcept { return sup_; }

    /// Some n has |w_n| == 1 (up to a few ulps, for harmonic descriptors whose
    /// terms are computed).
    bool has_unimodular_term() const;
    /// Some n has w_n == 0.
    bool has_zero_term() const;
    /// Every w_n is real and nonnegative.
    bool is_nonnegative_real() const;

    std::string_view kind() const noexcept;
    const Descriptor& descriptor() const noexcept { return d_; }

    /// Equality of canonical descriptors: a list whose values all equal its
    /// tail compares equal to the constant sequence.
    friend bool operator==(const WeightSeq& a, const WeightSeq& b);

private:
    Descriptor d_;
    double inf_ = 0.0;
    double sup_ = 0.0;
};

/// D_W acting on l^p.
class DiagonalOperator {
public:
    DiagonalOperator(WeightSeq weights, double p);

    static DiagonalOperator scalar(Complex c, double p) {
        return DiagonalOperator(WeightSeq::constant(c), p);
    }

    const WeightSeq& weights() const noexcept { return weights_; }
    double p() const noexcept { return p_; }
    double operator_norm() const noexcept { return weights_.sup_modulus(); }

    friend bool operator==(const DiagonalOperator&, const DiagonalOperator&) = default;

private:
    WeightSeq weights_;
    double p_;
};

/// Coordinatewise product; coordinates whose product is exactly 0 leave the
/// support.
FinSeq apply_diagonal(const DiagonalOperator& d, const FinSeq& x);

/// Throws DomainError when the two exponents differ.
void require_same_exponent(double expected, double actual, std::string_view what);

} // namespace lpconj
