#include "lpconj/lp_core.hpp"

#include "lpconj/error.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <string>

namespace lpconj {

namespace {

constexpr double kUnimodularSlack = 8 * std::numeric_limits<double>::epsilon();

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool near_unimodular(Complex w) {
    return w != Complex{} && std::abs(std::abs(w) - 1.0) <= kUnimodularSlack;
}

} // namespace

double checked_exponent(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) {
        throw DomainError("exponent p must satisfy 1 <= p < inf, got " + std::to_string(p));
    }
    return p;
}

void require_same_exponent(double expected, double actual, std::string_view what) {
    if (expected != actual) {
        throw DomainError("exponent mismatch in " + std::string(what) + ": expected p = " +
                          std::to_string(expected) + ", got p = " + std::to_string(actual));
    }
}

// ---------------------------------------------------------------------------
// FinSeq

FinSeq::FinSeq(double p) : p_(checked_exponent(p)) {}

FinSeq::FinSeq(double p, std::vector<Entry> entries) : p_(checked_exponent(p)) {
    std::erase_if(entries, [](const Entry& e) { return e.value == Complex{}; });
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.index < b.index; });
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].index == 0) {
            throw DomainError("sequence indices start at 1");
        }
        if (!is_finite(entries[i].value)) {
            throw DomainError("non-finite coordinate at index " + std::to_string(entries[i].index));
        }
        if (i > 0 && entries[i - 1].index == entries[i].index) {
            throw DomainError("duplicate index " + std::to_string(entries[i].index));
        }
    }
    entries_ = std::move(entries);
}

FinSeq::FinSeq(Sorted, double p, std::vector<Entry> entries)
    : p_(p), entries_(std::move(entries)) {
#ifndef NDEBUG
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        assert(entries_[i].index > 0 && entries_[i].value != Complex{});
        assert(i == 0 || entries_[i - 1].index < entries_[i].index);
    }
#endif
}

FinSeq from_sorted_entries(double p, std::vector<Entry> entries) {
    return FinSeq(FinSeq::Sorted{}, p, std::move(entries));
}

FinSeq FinSeq::basis(double p, Index n, Complex t) {
    return FinSeq(p, {Entry{n, t}});
}

Complex FinSeq::operator[](Index n) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), n,
                               [](const Entry& e, Index k) { return e.index < k; });
    if (it == entries_.end() || it->index != n) {
        return {};
    }
    return it->value;
}

FinSeq FinSeq::scaled(Complex t) const {
    if (t == Complex{}) {
        return FinSeq(p_);
    }
    std::vector<Entry> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) {
        const Complex v = e.value * t;
        if (v != Complex{}) {
            out.push_back({e.index, v});
        }
    }
    return from_sorted_entries(p_, std::move(out));
}

// ---------------------------------------------------------------------------
// Norms and tail sums

double abs_pow(Complex z, double p) {
    const double m = std::abs(z);
    if (p == 1.0) {
        return m;
    }
    if (p == 2.0) {
        return m * m;
    }
    return std::pow(m, p);
}

TailSums::TailSums(const FinSeq& x) {
    const auto entries = x.entries();
    values_.resize(entries.size());
    double running = 0.0;
    for (std::size_t i = entries.size(); i-- > 0;) {
        running += abs_pow(entries[i].value, x.p());
        values_[i] = {entries[i].index, running};
    }
    max_index_ = x.max_index();
}

double TailSums::at(Index n) const {
    auto it = std::lower_bound(values_.begin(), values_.end(), n,
                               [](const auto& v, Index k) { return v.first < k; });
    return it == values_.end() ? 0.0 : it->second;
}

TailSums tail_sums(const FinSeq& x) { return TailSums(x); }

double norm_p(const FinSeq& x) {
    if (x.empty()) {
        return 0.0;
    }
    const double p = x.p();
    if (p == 1.0) {
        double sum = 0.0;
        for (const auto& e : x.entries()) {
            sum += std::abs(e.value);
        }
        return sum;
    }
    // Scale by the largest modulus so that |x_n|^p cannot under/overflow.
    double scale = 0.0;
    for (const auto& e : x.entries()) {
        scale = std::max(scale, std::abs(e.value));
    }
    double sum = 0.0;
    for (const auto& e : x.entries()) {
        sum += std::pow(std::abs(e.value) / scale, p);
    }
    return scale * std::pow(sum, 1.0 / p);
}

Complex coordinate(const FinSeq& x, Index n) {
    if (n == 0) {
        throw DomainError("coordinate index must be >= 1");
    }
    return x[n];
}

namespace {

template <class Op>
FinSeq merge(const FinSeq& x, const FinSeq& y, Op op, std::string_view what) {
    require_same_exponent(x.p(), y.p(), what);
    std::vector<Entry> out;
    out.reserve(x.support_size() + y.support_size());
    auto a = x.entries();
    auto b = y.entries();
    std::size_t i = 0;
    std::size_t j = 0;
    auto push = [&](Index n, Complex v) {
        if (v != Complex{}) {
            out.push_back({n, v});
        }
    };
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].index < b[j].index)) {
            push(a[i].index, op(a[i].value, Complex{}));
            ++i;
        } else if (i == a.size() || b[j].index < a[i].index) {
            push(b[j].index, op(Complex{}, b[j].value));
            ++j;
        } else {
            push(a[i].index, op(a[i].value, b[j].value));
            ++i;
            ++j;
        }
    }
    return from_sorted_entries(x.p(), std::move(out));
}

} // namespace

FinSeq add(const FinSeq& x, const FinSeq& y) {
    return merge(x, y, [](Complex u, Complex v) { return u + v; }, "add");
}

FinSeq subtract(const FinSeq& x, const FinSeq& y) {
    return merge(x, y, [](Complex u, Complex v) { return u - v; }, "subtract");
}

Truncation truncate(const FinSeq& x, Index last) {
    std::vector<Entry> kept;
    std::vector<Entry> dropped;
    for (const auto& e : x.entries()) {
        (e.index <= last ? kept : dropped).push_back(e);
    }
    const double discarded = norm_p(from_sorted_entries(x.p(), std::move(dropped)));
    return {from_sorted_entries(x.p(), std::move(kept)), discarded};
}

// ---------------------------------------------------------------------------
// WeightSeq

namespace {

struct Bounds {
    double inf;
    double sup;
};

Bounds harmonic_bounds(const WeightSeq::Harmonic& h) {
    const double limit = std::abs(h.c);
    const double first = std::abs(h.c + h.a);
    // |c + a t|^2 is a convex quadratic in t = 1/n; the sup over t in (0, 1]
    // sits at an end point, the discrete inf next to the vertex.
    Bounds b{std::min(limit, first), std::max(limit, first)};
    const double a2 = std::norm(h.a);
    if (a2 == 0.0) {
        return b;
    }
    const double vertex = -(h.c * std::conj(h.a)).real() / a2;
    if (vertex > 0.0 && vertex < 1.0) {
        const double n_star = std::min(1.0 / vertex, 0x1p62);
        for (double n : {std::floor(n_star), std::ceil(n_star)}) {
            if (n >= 1.0) {
                b.inf = std::min(b.inf, std::abs(h.c + h.a / n));
            }
        }
    }
    return b;
}

WeightSeq::Descriptor canonical(const WeightSeq::Descriptor& d) {
    if (const auto* l = std::get_if<WeightSeq::List>(&d)) {
        auto values = l->values;
        while (!values.empty() && values.back() == l->tail) {
            values.pop_back();
        }
        if (values.empty()) {
            return WeightSeq::Constant{l->tail};
        }
        return WeightSeq::List{std::move(values), l->tail};
    }
    if (const auto* h = std::get_if<WeightSeq::Harmonic>(&d); h && h->a == Complex{}) {
        return WeightSeq::Constant{h->c};
    }
    return d;
}

} // namespace

WeightSeq::WeightSeq(Descriptor d) : d_(std::move(d)) {
    std::visit(
        [this](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Constant>) {
                if (!is_finite(v.value)) {
                    throw DomainError("weight sequence must be bounded (finite constant)");
                }
                inf_ = sup_ = std::abs(v.value);
            } else if constexpr (std::is_same_v<T, List>) {
                if (!is_finite(v.tail)) {
                    throw DomainError("weight sequence must be bounded (finite tail)");
                }
                inf_ = sup_ = std::abs(v.tail);
                for (const auto& w : v.values) {
                    if (!is_finite(w)) {
                        throw DomainError("weight sequence must be bounded (finite list values)");
                    }
                    inf_ = std::min(inf_, std::abs(w));
                    sup_ = std::max(sup_, std::abs(w));
                }
            } else {
                if (!is_finite(v.c) || !is_finite(v.a)) {
                    throw DomainError("weight sequence must be bounded (finite harmonic coefficients)");
                }
                const auto b = harmonic_bounds(v);
                inf_ = b.inf;
                sup_ = b.sup;
            }
        },
        d_);
}

Complex WeightSeq::at(Index n) const {
    if (n == 0) {
        throw DomainError("weight index must be >= 1");
    }
    return std::visit(
        [n](const auto& v) -> Complex {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return v.value;
            } else if constexpr (std::is_same_v<T, List>) {
                return n <= v.values.size() ? v.values[n - 1] : v.tail;
            } else {
                return v.c + v.a / static_cast<double>(n);
            }
        },
        d_);
}

bool WeightSeq::has_unimodular_term() const {
    return std::visit(
        [this](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return near_unimodular(v.value);
            } else if constexpr (std::is_same_v<T, List>) {
                return near_unimodular(v.tail) ||
                       std::any_of(v.values.begin(), v.values.end(), near_unimodular);
            } else {
                // |a|^2 t^2 + 2 Re(c conj a) t + |c|^2 - 1 = 0 with t = 1/n.
                const double qa = std::norm(v.a);
                if (qa == 0.0) {
                    return near_unimodular(v.c);
                }
                const double qb = 2.0 * (v.c * std::conj(v.a)).real();
                const double qc = std::norm(v.c) - 1.0;
                const double disc = qb * qb - 4.0 * qa * qc;
                if (disc < 0.0) {
                    return false;
                }
                const double root = std::sqrt(disc);
                for (double t : {(-qb - root) / (2.0 * qa), (-qb + root) / (2.0 * qa)}) {
                    if (!(t > 0.0) || t > 1.0 + 1e-12) {
                        continue;
                    }
                    const double n_real = std::min(1.0 / t, 0x1p62);
                    for (double n : {std::floor(n_real), std::ceil(n_real)}) {
                        if (n >= 1.0 && near_unimodular(at(static_cast<Index>(n)))) {
                            return true;
                        }
                    }
                }
                return false;
            }
        },
        d_);
}

bool WeightSeq::has_zero_term() const {
    return std::visit(
        [this](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return v.value == Complex{};
            } else if constexpr (std::is_same_v<T, List>) {
                return v.tail == Complex{} ||
                       std::any_of(v.values.begin(), v.values.end(),
                                   [](Complex w) { return w == Complex{}; });
            } else {
                if (v.c == Complex{}) {
                    return v.a == Complex{};
                }
                const Complex q = -v.a / v.c;
                if (q.imag() != 0.0 || q.real() < 1.0 || q.real() > 0x1p62 ||
                    std::floor(q.real()) != q.real()) {
                    return false;
                }
                return at(static_cast<Index>(q.real())) == Complex{};
            }
        },
        d_);
}

bool WeightSeq::is_nonnegative_real() const {
    auto nonneg = [](Complex w) { return w.imag() == 0.0 && w.real() >= 0.0; };
    return std::visit(
        [&](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return nonneg(v.value);
            } else if constexpr (std::is_same_v<T, List>) {
                return nonneg(v.tail) && std::all_of(v.values.begin(), v.values.end(), nonneg);
            } else {
                // c + a/n is monotone in n for real c, a.
                return v.c.imag() == 0.0 && v.a.imag() == 0.0 && nonneg(v.c) && nonneg(v.c + v.a);
            }
        },
        d_);
}

std::string_view WeightSeq::kind() const noexcept {
    switch (d_.index()) {
    case 0:
        return "constant";
    case 1:
        return "list";
    default:
        return "harmonic";
    }
}

bool operator==(const WeightSeq& a, const WeightSeq& b) {
    return canonical(a.d_) == canonical(b.d_);
}

// ---------------------------------------------------------------------------
// DiagonalOperator

DiagonalOperator::DiagonalOperator(WeightSeq weights, double p)
    : weights_(std::move(weights)), p_(checked_exponent(p)) {}

FinSeq apply_diagonal(const DiagonalOperator& d, const FinSeq& x) {
    require_same_exponent(d.p(), x.p(), "apply_diagonal");
    std::vector<Entry> out;
    out.reserve(x.support_size());
    for (const auto& e : x.entries()) {
        const Complex v = d.weights().at(e.index) * e.value;
        if (v != Complex{}) {
            out.push_back({e.index, v});
        }
    }
    return from_sorted_entries(x.p(), std::move(out));
}

} // namespace lpconj
