#include "cli.hpp"

#include "lpconj/conjugacy.hpp"
#include "lpconj/io.hpp"
#include "lpconj/precise.hpp"
#include "lpconj/probe.hpp"
#include "lpconj/rotation.hpp"
#include "lpconj/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>

namespace lpconj::cli {

namespace {

using nlohmann::json;

constexpr double kPs[] = {1.0, 1.5, 2.0};

/// `worst` is compared against `limit`; most properties bound a violation from
/// above, a few (sensitivity checks) require it to exceed the limit.
struct Outcome {
    std::size_t samples = 0;
    double worst = 0.0;
    double limit = 0.0;
    bool at_least = false;
    json detail = json::object();

    void observe(double v) { worst = at_least ? std::min(worst, v) : std::max(worst, v); }
    bool passed() const { return at_least ? worst > limit : worst <= limit; }
};

Outcome upper(double limit) { return {0, 0.0, limit, false, json::object()}; }
Outcome lower(double limit) { return {0, std::numeric_limits<double>::infinity(), limit, true, json::object()}; }

double pick_p(Rng& rng) { return kPs[rng.integer(0, 2)]; }

Complex unit(Rng& rng) { return std::polar(1.0, rng.uniform(-std::numbers::pi, std::numbers::pi)); }

ExponentSeq random_exponents(Rng& rng, double r_max) {
    std::vector<double> v(200);
    for (auto& s : v) s = rng.uniform(1.0, r_max);
    return ExponentSeq(ExponentSeq::List{std::move(v), rng.uniform(1.0, r_max)});
}

double rel_diff(const FinSeq& a, const FinSeq& b) {
    const double d = norm_p(subtract(a, b));
    const double s = norm_p(b);
    return s > 0.0 ? d / s : d;
}

double coordinate_rel_diff(const FinSeq& a, const FinSeq& b) {
    double worst = 0.0;
    for (const auto& e : b.entries()) worst = std::max(worst, std::abs(a[e.index] - e.value) / std::abs(e.value));
    if (a.support_size() != b.support_size()) return std::numeric_limits<double>::infinity();
    return worst;
}

FinSeq with_power_norm(Rng& rng, double p, double pp) {
    SamplingPlan plan;
    plan.norm_lo = plan.norm_hi = 1.0;
    FinSeq x = random_finseq(rng, p, plan);
    return x.scaled(std::pow(pp, 1.0 / p) / norm_p(x));
}

Outcome power_difference_sandwich(std::uint64_t seed, std::size_t n) {
    Outcome o = upper(1e-12);
    Rng rng(seed, 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = static_cast<double>(rng.integer(1, 6));
        const double s = rng.uniform(1.0, r);
        const double a = rng.uniform01();
        const double b = rng.uniform(0.0, a);
        const double mid = std::pow(a, s) - std::pow(b, s);
        o.observe((1 - a) * (std::pow(a, r) - std::pow(b, r)) - mid);
        o.observe(mid - (a - b) / (1 - a));
    }
    o.samples = n;
    return o;
}

Outcome root_contraction(std::uint64_t seed, std::size_t n) {
    Outcome o = upper(1e-12);
    Rng rng(seed, 2);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = rng.log_uniform(1e-6, 1e3);
        const double s = rng.uniform(1.0, 6.0);
        const double x = rng.uniform(0.0, 50.0);
        const double y = rng.uniform(0.0, 50.0);
        const double fx = std::pow(a + std::pow(x, s), 1 / s);
        const double fy = std::pow(a + std::pow(y, s), 1 / s);
        o.observe(std::abs(fx - fy) - std::abs(x - y));
    }
    o.samples = n;
    return o;
}

/// Relative violation of the two-sided norm bounds, per branch of ||x||_p^p.
Outcome warp_norm_sandwich(std::uint64_t seed, std::size_t n, bool small) {
    Outcome o = upper(1e-12);
    Rng rng(seed, small ? 3 : 4);
    for (double p : kPs) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto s = random_exponents(rng, rng.uniform(1.0, 4.0));
            const double r = s.integer_bound();
            const double pp = small ? 0.5 * rng.log_uniform(1e-6, 1.0) : 0.5 * rng.log_uniform(1.0 + 1e-9, 1e6);
            const FinSeq x = with_power_norm(rng, p, pp);
            const double nx = norm_p(x);
            const double ny = norm_p(WarpMap(s, p).forward(x));
            double lo = 0.0;
            double hi = 0.0;
            if (std::pow(nx, p) <= 0.5) {
                lo = std::pow(2.0, -1 / p) * std::pow(nx, r);
                hi = std::pow(2.0, 1 / p) * nx;
            } else {
                lo = std::pow(2.0, -r / p) * nx;
                hi = std::pow(2.0, r / p) * std::pow(nx, r);
            }
            o.observe((lo - ny) / lo);
            o.observe((ny - hi) / hi);
        }
    }
    o.samples = n * std::size(kPs);
    return o;
}

Outcome warp_scaling_identity(std::uint64_t seed, std::size_t n) {
    Outcome o = upper(1e-10);
    Rng rng(seed, 5);
    SamplingPlan plan;
    plan.norm_lo = 1e-2;
    plan.norm_hi = 1e1;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = pick_p(rng);
        const auto s = random_exponents(rng, 4.0);
        const WarpMap h(s, p);
        const FinSeq x = random_finseq(rng, p, plan);
        const double t = rng.log_uniform(1.0, 1e2);
        const FinSeq hx = h.forward(x);
        std::vector<Entry> rhs;
        for (const auto& e : hx.entries()) {
            rhs.push_back({e.index, e.value * std::pow(t, s.at(e.index))});
        }
        o.observe(coordinate_rel_diff(h.forward(x.scaled(t)), FinSeq(p, rhs)));
    }
    o.samples = n;
    return o;
}

Outcome warp_roundtrip(std::uint64_t seed, std::size_t n) {
    Outcome o = upper(1e-9);
    Rng rng(seed, 6);
    for (std::size_t i = 0; i < n; ++i) {
        const double p = pick_p(rng);
        const WarpMap h(random_exponents(rng, 4.0), p);
        const FinSeq x = random_finseq(rng, p);
        o.observe(rel_diff(h.inverse(h.forward(x)), x));
        o.observe(rel_diff(h.forward(h.inverse(x)), x));
    }
    o.samples = n;
    return o;
}

Outcome warp_roundtrip_mutation() {
    Outcome o = lower(1e-3);
    const FinSeq x(1.0, {{1, 0.3}, {2, 0.2}});
    const FinSeq y = WarpMap(ExponentSeq::constant(2.0), 1.0).forward(x);
    const FinSeq back = WarpMap(ExponentSeq(ExponentSeq::List{{2.1}, 2.0}), 1.0).inverse(y);
    o.observe(rel_diff(back, x));
    o.samples = 1;
    o.detail = {{"witness", io::to_json(x)}, {"perturbed_inverse", io::to_json(back)}};
    return o;
}

Outcome warp_high_precision(std::uint64_t seed, std::size_t n, unsigned digits) {
    Outcome o = upper(1e-12);
    const precise::ScopedDigits guard(digits);
    Rng rng(seed, 7);
    SamplingPlan plan;
    plan.max_support = 30;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = pick_p(rng);
        const auto s = random_exponents(rng, 4.0);
        const FinSeq x = random_finseq(rng, p, plan);
        const FinSeq got = WarpMap(s, p).forward(x);
        const auto ref = precise::warp_forward(s, x);
        if (got.support_size() != ref.size()) {
            o.observe(std::numeric_limits<double>::infinity());
            continue;
        }
        for (std::size_t k = 0; k < ref.size(); ++k) {
            o.observe(std::abs(got.entries()[k].value - ref[k]) / std::abs(ref[k]));
        }
    }
    o.samples = n;
    o.detail = {{"digits", digits}};
    return o;
}

Outcome warp_intertwines_dilation(std::uint64_t seed, std::size_t n) {
    Outcome o = upper(1e-9);
    Rng rng(seed, 8);
    const std::vector<WeightSeq> weights{WeightSeq::constant(4.0), WeightSeq::list({2.0, 8.0}, 2.0),
                                         WeightSeq::harmonic(2.0, 1.0)};
    for (const auto& w : weights) {
        const double rho = w.inf_modulus();
        for (std::size_t i = 0; i < n; ++i) {
            const double p = pick_p(rng);
            const WarpMap h(exponents_from_weights(w, rho), p);
            const FinSeq x = random_finseq(rng, p);
            const FinSeq hx = h.forward(x);
            std::vector<Entry> rhs;
            for (const auto& e : hx.entries()) {
                rhs.push_back({e.index, std::abs(w.at(e.index)) * e.value});
            }
            o.observe(coordinate_rel_diff(h.forward(x.scaled(rho)), FinSeq(p, rhs)));
        }
    }
    o.samples = n * weights.size();
    return o;
}

Outcome naive_power_map_counterexample() {
    // N equal coordinates with ||x||_p^p = 1/2 and S = 2: the coordinatewise
    // power map falls below the lower norm bound, the warp does not.
    Outcome o = upper(0.0);
    const auto s = ExponentSeq::constant(2.0);
    json rows = json::array();
    for (double p : {1.0, 2.0}) {
        for (Index n : {64u, 256u, 4096u}) {
            std::vector<Entry> e;
            for (Index k = 1; k <= n; ++k) e.push_back({k, std::pow(0.5 / static_cast<double>(n), 1 / p)});
            const FinSeq x(p, e);
            const double bound = std::pow(2.0, -1 / p) * std::pow(norm_p(x), 2);
            const double naive = norm_p(naive_power_map(s, x));
            const double warped = norm_p(WarpMap(s, p).forward(x));
            o.observe(naive < bound ? 0.0 : 1.0);
            o.observe(warped >= bound * (1 - 1e-12) ? 0.0 : 1.0);
            rows.push_back({{"p", p}, {"n", n}, {"lower_bound", bound}, {"naive", naive}, {"warp", warped}});
            ++o.samples;
        }
    }
    o.detail = {{"witnesses", rows}};
    return o;
}

Outcome phase_warp_intertwining(std::uint64_t seed, std::size_t n) {
    Outcome o = upper(1e-10);
    Rng rng(seed, 9);
    for (std::size_t i = 0; i < n; ++i) {
        double r = rng.log_uniform(1e-2, 1e2);
        if (std::abs(r - 1.0) < 1e-3) r = 2.0;
        const Complex w = r * unit(rng);
        const Complex z = rng.log_uniform(1e-3, 1e3) * unit(rng);
        const PhaseWarp f(w);
        o.observe(std::abs(f(std::abs(w) * z) - w * f(z)) / (1.0 + std::abs(z)));
    }
    o.samples = n;
    return o;
}

Outcome phase_warp_witness() {
    Outcome o = upper(1e-14);
    const Complex w(0.0, 2.0);
    const PhaseWarp f(w);
    o.observe(std::abs(f(4.0) - Complex(-4.0, 0.0)));
    o.observe(std::abs(f(4.0) - w * f(2.0)));
    o.samples = 1;
    return o;
}

Outcome rotation_norm_and_intertwining(std::uint64_t seed, std::size_t n) {
    Outcome o = upper(1e-10);
    Rng rng(seed, 10);
    const std::vector<WeightSeq> weights{WeightSeq::constant(Complex(0, 4)),
                                         WeightSeq::list({{0, 2}, {-8, 0.5}}, Complex(0, -2)),
                                         WeightSeq::harmonic(Complex(0, 1.5), Complex(0.5, 0.5)),
                                         WeightSeq::list({Complex(0.25, 0.1)}, Complex(-0.5, 0))};
    for (const auto& w : weights) {
        for (std::size_t i = 0; i < n; ++i) {
            const double p = pick_p(rng);
            const FinSeq x = random_finseq(rng, p);
            const FinSeq fx = rotation_forward(w, x);
            o.observe(std::abs(norm_p(fx) - norm_p(x)) / norm_p(x));
            o.observe(rel_diff(rotation_inverse(w, fx), x));
            std::vector<Entry> lifted;
            std::vector<Entry> rhs;
            for (const auto& e : x.entries()) lifted.push_back({e.index, std::abs(w.at(e.index)) * e.value});
            for (const auto& e : fx.entries()) rhs.push_back({e.index, w.at(e.index) * e.value});
            o.observe(coordinate_rel_diff(rotation_forward(w, FinSeq(p, lifted)), FinSeq(p, rhs)));
        }
    }
    o.samples = n * weights.size();
    return o;
}

Outcome conjugacy_defect_over(const std::vector<WeightSeq>& weights, bool halving, std::uint64_t seed,
                              std::size_t n, double tolerance) {
    Outcome o = upper(tolerance);
    json rows = json::array();
    for (const auto& w : weights) {
        for (double p : kPs) {
            const auto m = halving ? build_conjugacy_to_halving(w, p) : build_conjugacy_to_doubling(w, p);
            const DefectReport r = conjugacy_defect(m, n, seed);
            o.observe(r.max_defect);
            rows.push_back({{"weights", io::to_json(w)}, {"p", p}, {"max_defect", r.max_defect}});
            o.samples += n;
        }
    }
    o.detail = {{"cases", rows}};
    return o;
}

Outcome doubling_identity_exact(std::uint64_t seed, std::size_t n) {
    Outcome o = upper(0.0);
    for (double p : kPs) {
        const auto m = build_conjugacy_to_doubling(WeightSeq::constant(2.0), p);
        o.observe(conjugacy_defect(m, n, seed).max_defect);
        o.samples += n;
    }
    return o;
}

Outcome harness_sensitivity(std::uint64_t seed, std::size_t n) {
    Outcome o = lower(0.1);
    const auto good = build_conjugacy_to_doubling(WeightSeq::constant(Complex(0, 4)), 2.0);
    auto stages = good.stages();
    std::swap(stages.front(), stages.back());
    const ConjugacyMap bad(stages, good.source(), good.target());
    o.observe(conjugacy_defect(bad, n, seed).max_defect);
    o.samples = n;
    return o;
}

Outcome escape_time_oracle(unsigned digits) {
    Outcome o = upper(0.0);
    const precise::ScopedDigits guard(digits);
    const WeightSeq w = WeightSeq::harmonic(1.0, 1.0);
    std::vector<Index> indices;
    for (Index n = 10; n <= 10000; n *= 10) indices.push_back(n);
    json rows = json::array();
    for (double radius_factor : {2.0, 3.5}) {
        const EscapeProfile e = escape_profile(w, 2.0, 0.1, indices, radius_factor, 1000000);
        std::uint64_t previous = 0;
        for (const auto& row : e.rows) {
            const precise::Real base = precise::Real(1) + precise::Real(1) / precise::Real(row.index);
            const std::uint64_t expected = precise::first_power_exceeding(base, precise::Real(radius_factor));
            const bool ok = row.escape_time && *row.escape_time == expected && *row.escape_time > previous;
            o.observe(ok ? 0.0 : 1.0);
            previous = row.escape_time.value_or(previous);
            rows.push_back({{"radius_factor", radius_factor},
                            {"index", row.index},
                            {"escape_time", row.escape_time ? json(*row.escape_time) : json(nullptr)},
                            {"oracle", expected}});
            ++o.samples;
        }
    }
    o.detail = {{"rows", rows}};
    return o;
}

Outcome escape_time_uniform_bound(std::uint64_t seed, std::size_t n) {
    Outcome o = upper(static_cast<double>(uniform_escape_bound(1.1, 2.0)));
    Rng rng(seed, 11);
    std::vector<WeightSeq> weights{WeightSeq::constant(1.1), WeightSeq::harmonic(Complex(0, 1.1), 0.5),
                                   WeightSeq::list({3.0, Complex(0, -1.2)}, Complex(-1.1, 0))};
    for (std::size_t i = 0; i < n; ++i) {
        const double c = rng.uniform(1.1, 3.0);
        weights.push_back(WeightSeq::harmonic(c * unit(rng), rng.uniform(0.0, 2.0) * unit(rng)));
    }
    std::vector<Index> indices{1, 2, 3, 10, 100, 1000, 10000, 100000};
    for (const auto& w : weights) {
        if (w.inf_modulus() < 1.1) continue;
        const EscapeProfile e = escape_profile(w, 2.0, 0.1, indices, 2.0, 1000);
        for (const auto& row : e.rows) {
            o.observe(row.escape_time ? static_cast<double>(*row.escape_time)
                                      : std::numeric_limits<double>::infinity());
        }
        ++o.samples;
    }
    return o;
}

double json_number(double v) { return std::isfinite(v) ? v : (v > 0 ? 1e308 : -1e308); }

} // namespace

json selftest(std::uint64_t seed, std::size_t samples, std::optional<double> tolerance, std::ostream& log) {
    const unsigned digits = precise::digits_from_env();
    const double defect_tolerance = tolerance.value_or(1e-8);
    const std::size_t n = std::max<std::size_t>(samples, 1);

    std::vector<std::pair<std::string, std::function<Outcome()>>> props{
        {"power_difference_sandwich", [&] { return power_difference_sandwich(seed, 100 * n); }},
        {"root_contraction", [&] { return root_contraction(seed, 100 * n); }},
        {"warp_norm_bounds_small", [&] { return warp_norm_sandwich(seed, 10 * n, true); }},
        {"warp_norm_bounds_large", [&] { return warp_norm_sandwich(seed, 10 * n, false); }},
        {"warp_scaling_identity", [&] { return warp_scaling_identity(seed, n); }},
        {"warp_roundtrip", [&] { return warp_roundtrip(seed, n); }},
        {"warp_roundtrip_mutation", [&] { return warp_roundtrip_mutation(); }},
        {"warp_high_precision", [&] { return warp_high_precision(seed, std::max<std::size_t>(n / 5, 1), digits); }},
        {"warp_intertwines_dilation", [&] { return warp_intertwines_dilation(seed, n); }},
        {"naive_power_map_counterexample", [&] { return naive_power_map_counterexample(); }},
        {"phase_warp_intertwining", [&] { return phase_warp_intertwining(seed, 10 * n); }},
        {"phase_warp_witness", [&] { return phase_warp_witness(); }},
        {"rotation_intertwining", [&] { return rotation_norm_and_intertwining(seed, n); }},
        {"doubling_conjugacy_defect",
         [&] {
             return conjugacy_defect_over({WeightSeq::constant(4.0), WeightSeq::list({2.0, 8.0}, 2.0),
                                           WeightSeq::harmonic(2.0, 1.0)},
                                          false, seed, n, defect_tolerance);
         }},
        {"doubling_identity_exact", [&] { return doubling_identity_exact(seed, n); }},
        {"halving_conjugacy_defect",
         [&] {
             return conjugacy_defect_over({WeightSeq::constant(0.25), WeightSeq::list({0.3, 0.5}, 0.5)}, true,
                                          seed, n, defect_tolerance);
         }},
        {"defect_harness_sensitivity", [&] { return harness_sensitivity(seed, n); }},
        {"escape_time_oracle", [&] { return escape_time_oracle(digits); }},
        {"escape_time_uniform_bound", [&] { return escape_time_uniform_bound(seed, std::max<std::size_t>(n / 10, 1)); }},
    };

    json report = {{"command", "selftest"}, {"seed", seed}, {"samples", n}, {"precision_digits", digits}};
    json results = json::array();
    bool all = true;
    for (auto& [name, fn] : props) {
        json entry = {{"name", name}};
        try {
            const Outcome o = fn();
            const bool ok = o.passed();
            all = all && ok;
            entry["passed"] = ok;
            entry["samples"] = o.samples;
            entry["worst"] = json_number(o.worst);
            entry["limit"] = o.limit;
            entry["comparison"] = o.at_least ? ">" : "<=";
            if (!o.detail.empty()) entry["detail"] = o.detail;
            log << (ok ? "PASS " : "FAIL ") << name << " worst=" << io::format_double(o.worst)
                << (o.at_least ? " > " : " <= ") << io::format_double(o.limit) << "\n";
        } catch (const std::exception& e) {
            all = false;
            entry["passed"] = false;
            entry["samples"] = 0;
            entry["worst"] = nullptr;
            entry["limit"] = nullptr;
            entry["error"] = e.what();
            log << "FAIL " << name << " error: " << e.what() << "\n";
        }
        results.push_back(std::move(entry));
    }
    report["properties"] = std::move(results);
    report["passed"] = all;
    return report;
}

} // namespace lpconj::cli
