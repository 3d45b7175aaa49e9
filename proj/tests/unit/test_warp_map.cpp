#include "lpconj/error.hpp"
#include "lpconj/precise.hpp"
#include "lpconj/warp_map.hpp"

#include "support/generators.hpp"

#include <gtest/gtest.h>

using namespace lpconj;
using lpconj::testing::Gen;

namespace {

ExponentSeq list_exponents(std::vector<double> v, double tail) {
    return ExponentSeq(ExponentSeq::List{std::move(v), tail});
}

} // namespace

// ---------------------------------------------------------------------------
// ExponentSeq

TEST(ExponentSeq, ValidatesRangeAndBound) {
    EXPECT_THROW(ExponentSeq::constant(0.9), DomainError);
    EXPECT_THROW(list_exponents({1.0, 0.5}, 2.0), DomainError);
    EXPECT_THROW(ExponentSeq(ExponentSeq::Harmonic{1.0, -0.5}), DomainError);
    EXPECT_THROW(ExponentSeq(ExponentSeq::Constant{2.0}, 1.5), DomainError);
    EXPECT_THROW(ExponentSeq::constant(std::numeric_limits<double>::infinity()), DomainError);

    const ExponentSeq s(ExponentSeq::Harmonic{1.0, 2.5});
    EXPECT_EQ(s.inf(), 1.0);
    EXPECT_EQ(s.sup(), 3.5);
    EXPECT_EQ(s.bound(), 3.5);
    EXPECT_EQ(s.integer_bound(), 4);
    EXPECT_EQ(ExponentSeq(ExponentSeq::Constant{2.0}, 5.0).bound(), 5.0);
    EXPECT_TRUE(ExponentSeq::constant(1.0).is_identity());
}

TEST(ExponentsFromWeights, Examples) {
    const auto one = exponents_from_weights(WeightSeq::constant(2.0), 2.0);
    EXPECT_EQ(one.at(1), 1.0);
    EXPECT_EQ(one.at(77), 1.0);
    EXPECT_TRUE(one.is_identity());

    const auto two = exponents_from_weights(WeightSeq::constant(4.0), 2.0);
    EXPECT_DOUBLE_EQ(two.at(3), 2.0);

    const auto mixed = exponents_from_weights(WeightSeq::list({2.0, 8.0}, 2.0), 2.0);
    EXPECT_DOUBLE_EQ(mixed.at(1), 1.0);
    EXPECT_DOUBLE_EQ(mixed.at(2), 3.0);
    EXPECT_DOUBLE_EQ(mixed.at(3), 1.0);
    EXPECT_DOUBLE_EQ(mixed.bound(), 3.0);
}

TEST(ExponentsFromWeights, Errors) {
    EXPECT_THROW(exponents_from_weights(WeightSeq::constant(4.0), 1.0), HypothesisError);
    EXPECT_THROW(exponents_from_weights(WeightSeq::constant(4.0), 0.5), HypothesisError);
    EXPECT_THROW(exponents_from_weights(WeightSeq::list({4.0, 1.5}, 4.0), 2.0), HypothesisError);
    EXPECT_THROW(exponents_from_weights(WeightSeq::list({4.0, 0.0}, 4.0), 2.0), HypothesisError);
}

TEST(ExponentsFromWeights, ComplexHarmonicUsesModulus) {
    const WeightSeq w = WeightSeq::harmonic({0, 2}, {1, 0}); // |2i + 1/n| > 2
    const auto s = exponents_from_weights(w, w.inf_modulus());
    for (Index n : {1u, 2u, 10u, 1000u}) {
        EXPECT_NEAR(std::pow(w.inf_modulus(), s.at(n)), std::abs(w.at(n)), 1e-14);
        EXPECT_GE(s.at(n), 1.0);
        EXPECT_LE(s.at(n), s.bound());
    }
}

// ---------------------------------------------------------------------------
// stable_power_diff

TEST(StablePowerDiff, Examples) {
    EXPECT_NEAR(stable_power_diff(0.5, 0.2, 2.0), 0.21, 1e-16);
    for (double t : {0.0, 1e-300, 0.3, 7.0, 1e200}) {
        for (double s : {1.0, 1.5, 4.0}) {
            EXPECT_EQ(stable_power_diff(t, t, s), 0.0);
        }
    }
}

TEST(StablePowerDiff, NearlyEqualArgumentsKeepFullPrecision) {
    const precise::ScopedDigits digits(60);
    const double hi = 1e-8 + 1e-16;
    const double lo = 1e-8;
    for (double s : {1.0, 1.5, 2.0, 3.25}) {
        const double exact = precise::power_diff(hi, lo, s).convert_to<double>();
        const double got = stable_power_diff(hi, lo, s);
        EXPECT_NEAR(got, exact, 4e-16 * exact) << "s = " << s;
    }
    // The decimal difference 1e-16 itself, as far as the operands carry it.
    EXPECT_NEAR(stable_power_diff(hi, lo, 1.0), 1e-16, 1e-8 * 1e-16);
}

TEST(StablePowerDiff, NaiveSubtractionIsWorse) {
    const precise::ScopedDigits digits(60);
    const double hi = 1e-8 + 1e-16;
    const double lo = 1e-8;
    for (double s : {1.5, 2.0}) {
        const double exact = precise::power_diff(hi, lo, s).convert_to<double>();
        const double naive_err = std::abs(std::pow(hi, s) - std::pow(lo, s) - exact) / exact;
        const double stable_err = std::abs(stable_power_diff(hi, lo, s) - exact) / exact;
        EXPECT_GT(naive_err, 1e-10) << "s = " << s;
        EXPECT_LT(stable_err, 1e-15) << "s = " << s;
    }
}

TEST(StablePowerDiff, RandomAgainstHighPrecision) {
    const precise::ScopedDigits digits(50);
    Gen g(21);
    for (int i = 0; i < 3000; ++i) {
        const double hi = g.log_uniform(1e-12, 1e6);
        const double lo = hi * (g.coin() ? 1.0 - g.log_uniform(1e-15, 1.0) : g.uniform(0.0, 1.0));
        const double s = g.uniform(1.0, 4.0);
        const double exact = precise::power_diff(hi, lo, s).convert_to<double>();
        EXPECT_NEAR(stable_power_diff(hi, lo, s), exact, 1e-13 * exact);
    }
}

TEST(StablePowerDiff, Errors) {
    EXPECT_THROW(stable_power_diff(0.2, 0.5, 2.0), DomainError);
    EXPECT_THROW(stable_power_diff(0.5, -0.1, 2.0), DomainError);
    EXPECT_THROW(stable_power_diff(0.5, 0.2, 0.99), DomainError);
}

TEST(RootGap, InvertsPowerGap) {
    Gen g(22);
    for (int i = 0; i < 5000; ++i) {
        const double lo = g.coin() ? 0.0 : g.log_uniform(1e-10, 1e4);
        const double gap = g.log_uniform(1e-12, 1e4);
        const double s = g.uniform(1.0, 4.0);
        EXPECT_NEAR(root_gap(lo, power_gap(lo, gap, s), s), gap, 1e-12 * gap);
    }
}

// ---------------------------------------------------------------------------
// Elementary inequalities behind the norm bounds

TEST(PowerDifferenceSandwich, HoldsOnRandomTuples) {
    Gen g(31);
    for (int i = 0; i < 100000; ++i) {
        const int r = static_cast<int>(g.integer(1, 6));
        const double s = g.uniform(1.0, r);
        const double a = g.uniform(0.0, 1.0);
        const double b = g.uniform(0.0, a);
        const double mid = std::pow(a, s) - std::pow(b, s);
        ASSERT_LE((1 - a) * (std::pow(a, r) - std::pow(b, r)), mid + 1e-12);
        ASSERT_LE(mid, (a - b) / (1 - a) + 1e-12);
    }
}

TEST(RootContraction, HoldsOnRandomTuples) {
    Gen g(32);
    for (int i = 0; i < 100000; ++i) {
        const double a = g.log_uniform(1e-6, 1e3);
        const double s = g.uniform(1.0, 6.0);
        const double x = g.uniform(0.0, 50.0);
        const double y = g.uniform(0.0, 50.0);
        const double fx = std::pow(a + std::pow(x, s), 1 / s);
        const double fy = std::pow(a + std::pow(y, s), 1 / s);
        ASSERT_LE(std::abs(fx - fy), std::abs(x - y) + 1e-12);
    }
}

// ---------------------------------------------------------------------------
// warp_forward / warp_inverse

TEST(WarpForward, Examples) {
    const WarpMap squares(ExponentSeq::constant(2.0), 1.0);
    const FinSeq y = warp_forward(squares, FinSeq(1.0, {{1, 0.3}, {2, 0.2}}));
    ASSERT_EQ(y.support_size(), 2u);
    EXPECT_NEAR(y[1].real(), 0.21, 1e-15);
    EXPECT_NEAR(y[2].real(), 0.04, 1e-16);

    Gen g(41);
    const WarpMap id(ExponentSeq::constant(1.0), 1.5);
    for (int i = 0; i < 100; ++i) {
        const FinSeq x = lpconj::testing::random_vector(g, 1.5);
        EXPECT_EQ(warp_forward(id, x), x);
    }
}

TEST(WarpForward, SingleCoordinateClosedForm) {
    Gen g(42);
    for (int i = 0; i < 500; ++i) {
        const double p = g.pick(std::vector<double>{1.0, 1.5, 2.0});
        const auto s = lpconj::testing::random_exponents(g, 4.0, 20);
        const Index n = static_cast<Index>(g.integer(1, 30));
        const Complex t = g.log_uniform(1e-3, 1e2) * g.unit();
        const FinSeq y = warp_forward(WarpMap(s, p), FinSeq::basis(p, n, t));
        const Complex expected = t / std::abs(t) * std::pow(std::abs(t), s.at(n));
        ASSERT_EQ(y.support_size(), 1u);
        EXPECT_NEAR(std::abs(y[n] - expected), 0.0, 1e-13 * std::abs(expected));
    }
}

TEST(WarpForward, MatchesHighPrecisionDefinition) {
    // Frozen from a 50-digit evaluation of the defining formula.
    const ExponentSeq s(ExponentSeq::List{{1.5, 1.0, 2.5, 3.0}, 1.0});
    const FinSeq x(1.5, {{1, {0.4, -0.1}}, {3, {0.0, 0.25}}, {4, -0.3}});
    const FinSeq y = warp_forward(WarpMap(s, 1.5), x);
    EXPECT_NEAR(y[1].real(), 0.39195703573945799003, 1e-15);
    EXPECT_NEAR(y[1].imag(), -0.097989258934864497508, 1e-15);
    EXPECT_NEAR(y[3].imag(), 0.10511178154202338757, 1e-15);
    EXPECT_NEAR(y[4].real(), -0.027, 1e-16);

    const precise::ScopedDigits digits(50);
    Gen g(43);
    for (int i = 0; i < 200; ++i) {
        const double p = g.pick(std::vector<double>{1.0, 1.5, 2.0});
        const auto ex = lpconj::testing::random_exponents(g, 4.0);
        const FinSeq v = lpconj::testing::random_vector(g, p, 30);
        const FinSeq got = warp_forward(WarpMap(ex, p), v);
        const auto ref = precise::warp_forward(ex, v);
        ASSERT_EQ(got.support_size(), ref.size());
        for (std::size_t k = 0; k < ref.size(); ++k) {
            EXPECT_NEAR(std::abs(got.entries()[k].value - ref[k]), 0.0, 1e-12 * std::abs(ref[k]));
        }
    }
}

TEST(WarpForward, PreservesSupportExactly) {
    Gen g(44);
    for (int i = 0; i < 300; ++i) {
        const double p = g.pick(std::vector<double>{1.0, 1.5, 2.0});
        const FinSeq x = lpconj::testing::random_vector(g, p);
        const FinSeq y = warp_forward(WarpMap(lpconj::testing::random_exponents(g, 4.0), p), x);
        ASSERT_EQ(y.support_size(), x.support_size());
        for (std::size_t k = 0; k < x.support_size(); ++k) {
            EXPECT_EQ(y.entries()[k].index, x.entries()[k].index);
        }
    }
    EXPECT_TRUE(warp_forward(WarpMap(ExponentSeq::constant(3.0), 2.0), FinSeq(2.0)).empty());
}

TEST(WarpForward, ScalingIdentity) {
    Gen g(45);
    for (int i = 0; i < 500; ++i) {
        const double p = g.pick(std::vector<double>{1.0, 1.5, 2.0});
        const auto s = lpconj::testing::random_exponents(g, 4.0);
        const WarpMap h(s, p);
        const FinSeq x = lpconj::testing::random_vector(g, p, 50, 200, 1e-2, 1e1);
        const double t = g.log_uniform(1.0, 1e2);
        const FinSeq lhs = h.forward(x.scaled(t));
        FinSeq base = h.forward(x);
        std::vector<Entry> rhs;
        for (const auto& e : base.entries()) {
            rhs.push_back({e.index, e.value * std::pow(t, s.at(e.index))});
        }
        EXPECT_LE(lpconj::testing::max_coordinate_rel_diff(lhs, FinSeq(p, rhs)), 1e-10);
    }
}

TEST(WarpForward, NormBoundsInBothBranches) {
    Gen g(46);
    for (int i = 0; i < 4000; ++i) {
        const double p = g.pick(std::vector<double>{1.0, 1.5, 2.0});
        const auto s = lpconj::testing::random_exponents(g, g.uniform(1.0, 4.0));
        const double r = s.integer_bound();
        const bool small = i % 2 == 0;
        const double pp = small ? 0.5 * g.log_uniform(1e-6, 1.0) : 0.5 * g.log_uniform(1.0 + 1e-9, 1e6);
        const FinSeq x = lpconj::testing::vector_with_power_norm(g, p, pp);
        const double nx = norm_p(x);
        const double ny = norm_p(warp_forward(WarpMap(s, p), x));
        if (std::pow(nx, p) <= 0.5) {
            EXPECT_GE(ny, std::pow(2.0, -1 / p) * std::pow(nx, r) * (1 - 1e-12));
            EXPECT_LE(ny, std::pow(2.0, 1 / p) * nx * (1 + 1e-12));
        } else {
            EXPECT_GE(ny, std::pow(2.0, -r / p) * nx * (1 - 1e-12));
            EXPECT_LE(ny, std::pow(2.0, r / p) * std::pow(nx, r) * (1 + 1e-12));
        }
    }
}

TEST(WarpInverse, Examples) {
    const WarpMap squares(ExponentSeq::constant(2.0), 1.0);
    const FinSeq x = warp_inverse(squares, FinSeq(1.0, {{1, 0.21}, {2, 0.04}}));
    EXPECT_NEAR(x[1].real(), 0.3, 1e-15);
    EXPECT_NEAR(x[2].real(), 0.2, 1e-15);

    const FinSeq y(2.0, {{2, {1, -2}}, {7, 0.5}});
    EXPECT_EQ(warp_inverse(WarpMap(ExponentSeq::constant(1.0), 2.0), y), y);
}

TEST(WarpInverse, RoundTrip) {
    Gen g(47);
    for (int i = 0; i < 1000; ++i) {
        const double p = g.pick(std::vector<double>{1.0, 1.5, 2.0});
        const WarpMap h(lpconj::testing::random_exponents(g, 4.0), p);
        const FinSeq x = lpconj::testing::random_vector(g, p);
        EXPECT_LE(lpconj::testing::rel_diff(h.inverse(h.forward(x)), x), 1e-9);
        EXPECT_LE(lpconj::testing::max_coordinate_rel_diff(h.inverse(h.forward(x)), x), 1e-9);
        EXPECT_LE(lpconj::testing::rel_diff(h.forward(h.inverse(x)), x), 1e-9);
    }
}

TEST(WarpInverse, PerturbedExponentBreaksRoundTrip) {
    // Witness: p = 1, x = (0.3, 0.2), S = (2, 2); the inverse with s_1 = 2.1
    // returns x_1 ~ 0.3109.
    const FinSeq x(1.0, {{1, 0.3}, {2, 0.2}});
    const FinSeq y = WarpMap(ExponentSeq::constant(2.0), 1.0).forward(x);
    const FinSeq back = WarpMap(list_exponents({2.1}, 2.0), 1.0).inverse(y);
    EXPECT_GT(lpconj::testing::rel_diff(back, x), 1e-3);
    EXPECT_NEAR(back[1].real(), 0.3109, 1e-4);
}

TEST(Warp, ExponentMismatch) {
    const WarpMap h(ExponentSeq::constant(2.0), 1.0);
    EXPECT_THROW(h.forward(FinSeq(2.0, {{1, 1.0}})), DomainError);
    EXPECT_THROW(h.inverse(FinSeq(2.0, {{1, 1.0}})), DomainError);
}

TEST(Warp, IntertwinesDilationWithModulusWeights) {
    Gen g(48);
    const std::vector<WeightSeq> weights{
        WeightSeq::constant(4.0),
        WeightSeq::list({2.0, 8.0}, 2.0),
        WeightSeq::harmonic(2.0, 1.0),
        WeightSeq::harmonic({0, 1.5}, {0.5, 0.5}),
    };
    for (const auto& w : weights) {
        const double rho = w.inf_modulus();
        for (int i = 0; i < 250; ++i) {
            const double p = g.pick(std::vector<double>{1.0, 1.5, 2.0});
            const WarpMap h(exponents_from_weights(w, rho), p);
            const FinSeq x = lpconj::testing::random_vector(g, p);
            const FinSeq lhs = h.forward(x.scaled(rho));
            const FinSeq hx = h.forward(x);
            std::vector<Entry> rhs;
            for (const auto& e : hx.entries()) {
                rhs.push_back({e.index, std::abs(w.at(e.index)) * e.value});
            }
            EXPECT_LE(lpconj::testing::max_coordinate_rel_diff(lhs, FinSeq(p, rhs)), 1e-9);
        }
    }
}

TEST(RadicandDiagnostics, ReportsConditionOfNaiveSubtraction) {
    const WarpMap h(ExponentSeq::constant(2.0), 1.0);
    const auto d = radicand_diagnostics(h, FinSeq(1.0, {{1, 1e-9}, {2, 1.0}}));
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d[1].tail_lo, 0.0);
    EXPECT_DOUBLE_EQ(d[1].condition, 2.0);
    // T_1 ~ T_2: subtracting the squares loses ~9 digits.
    EXPECT_GT(d[0].condition, 1e9);
    EXPECT_NEAR(d[0].radicand, 2e-9, 1e-17);
}

// ---------------------------------------------------------------------------
// The coordinatewise power map is not a homeomorphism of l^p

TEST(NaivePowerMap, ViolatesNormSandwichWhereWarpDoesNot) {
    // x = N equal coordinates with ||x||_p^p = 1/2, S = 2. Then
    // ||naive(x)||_p^p = N (1/2N)^2 -> 0 while the lower bound stays at
    // 2^{-1/p} ||x||_p^2.
    const auto s = ExponentSeq::constant(2.0);
    for (double p : {1.0, 2.0}) {
        for (Index n : {64u, 256u, 4096u}) {
            std::vector<Entry> e;
            for (Index k = 1; k <= n; ++k) {
                e.push_back({k, std::pow(0.5 / static_cast<double>(n), 1 / p)});
            }
            const FinSeq x(p, e);
            const double lower = std::pow(2.0, -1 / p) * std::pow(norm_p(x), 2);
            EXPECT_LT(norm_p(naive_power_map(s, x)), lower) << "p=" << p << " N=" << n;
            EXPECT_GE(norm_p(warp_forward(WarpMap(s, p), x)), lower * (1 - 1e-12));
        }
    }
}
