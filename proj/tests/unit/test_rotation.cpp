#include "lpconj/error.hpp"
#include "lpconj/rotation.hpp"

#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace lpconj;
using lpconj::testing::Gen;

namespace {

Complex random_weight(Gen& g) {
    const double m = g.coin() ? g.uniform(0.1, 0.9) : g.uniform(1.1, 10.0);
    return m * g.unit();
}

} // namespace

TEST(PhaseWarp, Examples) {
    const PhaseWarp real4(4.0);
    EXPECT_TRUE(real4.is_identity());
    EXPECT_EQ(real4(Complex(0.3, -7.0)), Complex(0.3, -7.0));

    const PhaseWarp w(Complex(0, 2));
    EXPECT_DOUBLE_EQ(w.theta(), std::numbers::pi / 2);
    const Complex f2 = w(2.0);
    EXPECT_NEAR(f2.real(), 0.0, 1e-15);
    EXPECT_NEAR(f2.imag(), 2.0, 1e-15);

    // f_w(|w| z) = w f_w(z) at z = 2: f_w(4) = -4 = 2i * 2i.
    const Complex f4 = w(4.0);
    EXPECT_NEAR(std::abs(f4 - Complex(-4.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(f4 - Complex(0, 2) * f2), 0.0, 1e-14);
}

TEST(PhaseWarp, InverseExamples) {
    const PhaseWarp w(Complex(0, 2));
    EXPECT_NEAR(std::abs(w.inverse(Complex(0, 2)) - Complex(2.0)), 0.0, 1e-15);
    EXPECT_EQ(w.inverse(0.0), Complex(0.0));
    EXPECT_EQ(w(0.0), Complex(0.0));
}

TEST(PhaseWarp, ZeroWeightIsIdentity) {
    const PhaseWarp zero(0.0);
    EXPECT_TRUE(zero.is_identity());
    EXPECT_EQ(zero(Complex(1, 2)), Complex(1, 2));
    EXPECT_EQ(zero.inverse(Complex(1, 2)), Complex(1, 2));
}

TEST(PhaseWarp, RejectsUnimodularWeights) {
    EXPECT_THROW(PhaseWarp(Complex(0, 1)), HypothesisError);
    EXPECT_THROW(PhaseWarp(-1.0), HypothesisError);
    EXPECT_THROW(PhaseWarp(std::polar(1.0, 0.7)), HypothesisError);
}

TEST(PhaseWarp, PrincipalBranch) {
    EXPECT_DOUBLE_EQ(PhaseWarp(Complex(-2.0, -0.0)).theta(), std::numbers::pi);
    EXPECT_DOUBLE_EQ(PhaseWarp(Complex(-2.0, 0.0)).theta(), std::numbers::pi);
}

TEST(PhaseWarp, RoundTripAndModulus) {
    Gen g(51);
    for (int i = 0; i < 10000; ++i) {
        const PhaseWarp f(random_weight(g));
        const Complex z = g.log_uniform(1e-6, 1e6) * g.unit();
        const Complex fz = f(z);
        EXPECT_NEAR(std::abs(fz), std::abs(z), 1e-13 * std::abs(z));
        EXPECT_NEAR(std::abs(f.inverse(fz) - z), 0.0, 1e-12 * std::abs(z));
    }
}

TEST(PhaseWarp, IntertwinesModulusWithWeight) {
    Gen g(52);
    for (int i = 0; i < 10000; ++i) {
        const Complex w = random_weight(g);
        const PhaseWarp f(w);
        const Complex z = g.log_uniform(1e-3, 1e3) * g.unit();
        EXPECT_LE(std::abs(f(std::abs(w) * z) - w * f(z)), 1e-10 * (1 + std::abs(z)));
    }
}

TEST(PhaseWarp, AlsoIntertwinesReciprocals) {
    // f_w(z / |w|) = f_w(z) / w: the same warp serves 1/W.
    Gen g(53);
    for (int i = 0; i < 2000; ++i) {
        const Complex w = random_weight(g);
        const PhaseWarp f(w);
        const Complex z = g.log_uniform(1e-3, 1e3) * g.unit();
        EXPECT_LE(std::abs(f(z / std::abs(w)) - f(z) / w), 1e-10 * (1 + std::abs(z)));
    }
}

TEST(Rotation, Examples) {
    Gen g(54);
    const FinSeq x = lpconj::testing::random_vector(g, 2.0);
    EXPECT_EQ(rotation_forward(WeightSeq::harmonic(3.0, 1.0), x), x);
    EXPECT_EQ(rotation_inverse(WeightSeq::harmonic(3.0, 1.0), x), x);

    const FinSeq y = rotation_forward(WeightSeq::constant(Complex(0, 2)), FinSeq(2.0, {{1, 2.0}}));
    EXPECT_NEAR(std::abs(y[1] - Complex(0, 2)), 0.0, 1e-15);
    const FinSeq back = rotation_inverse(WeightSeq::constant(Complex(0, 2)), FinSeq(2.0, {{1, Complex(0, 2)}}));
    EXPECT_NEAR(std::abs(back[1] - Complex(2.0)), 0.0, 1e-15);
}

TEST(Rotation, RejectsUnimodularTerms) {
    const FinSeq x(2.0, {{1, 1.0}});
    EXPECT_THROW(rotation_forward(WeightSeq::list({2.0, Complex(0, 1)}, 3.0), x), HypothesisError);
    EXPECT_THROW(rotation_inverse(WeightSeq::harmonic(0.5, 2.5), x), HypothesisError);
}

TEST(Rotation, PreservesNormAndRoundTrips) {
    Gen g(55);
    for (int i = 0; i < 1000; ++i) {
        const double p = g.pick(std::vector<double>{1.0, 1.5, 2.0});
        const WeightSeq w = WeightSeq::list({random_weight(g), random_weight(g), random_weight(g)},
                                            random_weight(g));
        const FinSeq x = lpconj::testing::random_vector(g, p, 10, 10);
        const FinSeq y = rotation_forward(w, x);
        EXPECT_NEAR(norm_p(y), norm_p(x), 1e-12 * norm_p(x));
        EXPECT_LE(lpconj::testing::max_coordinate_rel_diff(rotation_inverse(w, y), x), 1e-12);
    }
}

TEST(Rotation, LiftedIntertwining) {
    Gen g(56);
    for (int i = 0; i < 1000; ++i) {
        const double p = g.pick(std::vector<double>{1.0, 1.5, 2.0});
        const Complex c = random_weight(g);
        const WeightSeq w = g.coin() ? WeightSeq::list({random_weight(g), random_weight(g)}, c)
                                     : WeightSeq::harmonic(c, 0.05 * g.unit());
        if (w.has_unimodular_term()) {
            continue;
        }
        const FinSeq x = lpconj::testing::random_vector(g, p, 20, 40);
        std::vector<Entry> scaled;
        for (const auto& e : x.entries()) {
            scaled.push_back({e.index, std::abs(w.at(e.index)) * e.value});
        }
        const FinSeq lhs = rotation_forward(w, FinSeq(p, scaled));
        const FinSeq rhs = apply_diagonal(DiagonalOperator(w, p), rotation_forward(w, x));
        EXPECT_LE(lpconj::testing::max_coordinate_rel_diff(lhs, rhs), 1e-10);
    }
}
