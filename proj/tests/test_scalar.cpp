#include "qgal/error.hpp"
#include "qgal/scalar.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qgal;

namespace {

Scalar l(const std::string& name) { return Scalar::param(name); }

Rat rat(long n, long d = 1) { return Rat(n, d); }

ScalingPtr ctx12(int order)
{
    return scale_instantiate({{"l1", rat(2)}, {"l2", rat(3)}}, order);
}

Scalar tpow(int k, const ScalingPtr& c, GaussRat coeff = GaussRat(1))
{
    return {Quad<TPoly>(TPoly::monomial(coeff, k, c->order)), c};
}

} // namespace

TEST(GaussRat, Arithmetic)
{
    const GaussRat a(rat(1), rat(1));
    const GaussRat b(rat(1), rat(-1));
    EXPECT_EQ(a * b, GaussRat(2));
    EXPECT_EQ(render(a), "1+i");
    EXPECT_EQ(render(GaussRat::i() * GaussRat(rat(-1, 2))), "-1/2*i");
    EXPECT_EQ(a / a, GaussRat(1));
    EXPECT_THROW(GaussRat{}.inverse(), Error);
}

TEST(Scalar, FieldOps)
{
    EXPECT_EQ((Scalar(GaussRat(rat(1), rat(1))) * Scalar(GaussRat(rat(1), rat(-1)))).render(), "2");
    const Scalar q = l("l1") / (l("l2") * l("l2")) * l("l2");
    EXPECT_EQ(q, l("l1") / l("l2"));
    EXPECT_EQ(q.render(), "(l1)/(l2)");
    EXPECT_EQ((l("l1") - l("l1")).is_zero(), true);
    EXPECT_TRUE(((l("l1") + l("l2")) / (l("l1") + l("l2"))).is_constant());
    EXPECT_THROW(l("l1") / Scalar(0), Error);
}

TEST(Scalar, Rendering)
{
    EXPECT_EQ((Scalar::rational(-1, 6) * l("l1") * l("l1")).render(), "-1/6*l1^2");
    EXPECT_EQ((l("l1") - l("l2")).render(true), "(l1-l2)");
    EXPECT_EQ((Scalar::i() * l("l1")).render(true), "i*l1");
    const auto c = ctx12(3);
    EXPECT_EQ(tpow(3, c, GaussRat(rat(2), rat(1))).render(), "(2+i)*t^3");
}

TEST(Scalar, ScaledArithmetic)
{
    const auto c = ctx12(3);
    const Scalar p = to_scaled(l("l1"), c) * to_scaled(l("l2"), c);
    EXPECT_EQ(p.render(), "6*t^2");
    EXPECT_EQ((p * p).render(), "0");
    EXPECT_THROW(p + l("l1"), Error);
    try {
        (void)(p + l("l1"));
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ModeMismatch);
    }
    const auto other = scale_instantiate({{"l1", rat(5)}}, 3);
    EXPECT_THROW(p + to_scaled(l("l1"), other), Error);
}

TEST(Scalar, ScaleCommutesWithArithmetic)
{
    const auto c = ctx12(4);
    const Scalar p = l("l1") * l("l1") + Scalar::i() * l("l2");
    const Scalar q = Scalar(1) + l("l1") * l("l2") * l("l2");
    EXPECT_EQ(to_scaled(p * q, c), to_scaled(p, c) * to_scaled(q, c));
    EXPECT_EQ(to_scaled(p + q, c), to_scaled(p, c) + to_scaled(q, c));
}

TEST(Scalar, LaurentCancellation)
{
    // (l1^2 + l1 l2)/(l1) has no pole; 1/l1 has one.
    const auto c = ctx12(3);
    const Scalar r = (l("l1") * l("l1") + l("l1") * l("l2")) / l("l1");
    EXPECT_EQ(to_scaled(r, c).render(), "5*t");
    const Scalar s = (l("l1") * l("l1")) / (l("l1") + l("l2") * l("l2"));
    // 4t^2/(2t + 9t^2) = 2t/(1 + 9t/2) = 2t - 9t^2 + 81/2 t^3
    EXPECT_EQ(to_scaled(s, c).render(), "2*t-9*t^2+81/2*t^3");
    try {
        (void)to_scaled(Scalar(1) / l("l1"), c);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotDefinedAtZero);
    }
}

TEST(Scalar, Instantiation)
{
    const Scalar d = l("l2") * l("l2") - Scalar(4) * l("l1") * l("l3");
    const auto c = scale_instantiate({{"l1", rat(1)}, {"l2", rat(3)}, {"l3", rat(2)}}, 4);
    EXPECT_EQ(to_scaled(d, c).render(), "t^2");
    EXPECT_EQ(sqrt_scalar(to_scaled(d, c)).render(), "t");

    const std::vector<Denominator> dens{{"2*l1-l2", Scalar(2) * l("l1") - l("l2")}};
    try {
        (void)scale_instantiate({{"l1", rat(1)}, {"l2", rat(2)}}, 3, dens);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateInstantiation);
        EXPECT_NE(std::string(e.what()).find("2*l1-l2"), std::string::npos);
    }
    EXPECT_NO_THROW((void)scale_instantiate({{"l1", rat(1)}, {"l2", rat(3)}}, 3, dens));
    EXPECT_THROW((void)scale_instantiate({{"l1", rat(0)}}, 3), Error);
}

TEST(Scalar, SquareRoots)
{
    const auto c = ctx12(4);
    EXPECT_EQ(sqrt_scalar(tpow(2, c)).render(), "t");
    EXPECT_EQ(sqrt_scalar(tpow(2, c, GaussRat(rat(25, 4)))).render(), "5/2*t");
    try {
        (void)sqrt_scalar(tpow(2, c, GaussRat(2)));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotAPerfectSquare);
    }
    const Scalar q = sqrt_scalar(tpow(2, c, GaussRat(2)), true);
    EXPECT_EQ(q * q, tpow(2, c, GaussRat(2)));

    // Multivariate: polynomial squares collapse, the rest adjoin a root.
    const Scalar sq = sqrt_scalar((l("l1") + l("l2")) * (l("l1") + l("l2")));
    EXPECT_EQ(sq, l("l1") + l("l2"));
    const Scalar d = l("l2") * l("l2") - Scalar(4) * l("l1") * l("l3");
    const Scalar s = sqrt_scalar(d);
    ASSERT_NE(s.multivariate(), nullptr);
    EXPECT_EQ(s * s, d);
    const Scalar u = (l("l2") + s) / (l("l2") - s);
    EXPECT_EQ(u * (l("l2") - s), l("l2") + s);
    // Symmetric in the root: (l2+s)^2 + (l2-s)^2 lies in the base field.
    const Scalar sym = (l("l2") + s) * (l("l2") + s) + (l("l2") - s) * (l("l2") - s);
    EXPECT_EQ(sym.multivariate()->y().has_value(), false);
}

TEST(Scalar, ScaledRootFromMultivariate)
{
    // sqrt(l2^2 - 4 l1 l3) under l1=1, l2=3, l3=2 is exactly t.
    const Scalar d = l("l2") * l("l2") - Scalar(4) * l("l1") * l("l3");
    const auto c = scale_instantiate({{"l1", rat(1)}, {"l2", rat(3)}, {"l3", rat(2)}}, 4);
    const Scalar s = sqrt_scalar(d);
    EXPECT_EQ(to_scaled(s, c).render(), "t");
    EXPECT_EQ(to_scaled((l("l2") - s) / (Scalar(2) * l("l1")), c).render(), "1");
    // Non-monomial radicand: 1 + l1 -> sqrt(1 + 2t) = 1 + t - t^2/2 + ...
    const Scalar r = sqrt_scalar(Scalar(1) + l("l1"));
    EXPECT_EQ(to_scaled(r, ctx12(3)).render(), "1+t-1/2*t^2+1/2*t^3");
}

TEST(Scalar, ClassicalValue)
{
    EXPECT_EQ((Scalar(3) + l("l1")).classical_value(), Scalar(3));
    EXPECT_EQ((l("l1") * l("l1") / l("l2")).classical_value(), Scalar(0));
    EXPECT_THROW((void)(l("l1") / l("l2")).classical_value(), Error);
    EXPECT_THROW((void)(Scalar(1) / l("l2")).classical_value(), Error);
}

TEST(ScalarProperty, RandomTriples)
{
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<int> small(-5, 5);
    std::uniform_int_distribution<int> pick(0, 3);
    const auto c = ctx12(4);
    auto draw = [&](bool scaled) {
        Scalar out;
        for (int k = 0; k < 3; ++k) {
            Scalar term = GaussRat(Rat(small(rng), 1 + std::abs(small(rng))), Rat(small(rng)));
            switch (pick(rng)) {
            case 1: term *= l("l1"); break;
            case 2: term *= l("l2") * l("l1"); break;
            case 3: term *= l("l2") * l("l2") * l("l2"); break;
            default: break;
            }
            out += term;
        }
        return scaled ? to_scaled(out, c) : out;
    };
    for (int n = 0; n < 1000; ++n) {
        const bool scaled = n % 2 == 1;
        const Scalar a = draw(scaled), b = draw(scaled), d = draw(scaled);
        ASSERT_EQ((a + b) + d, a + (b + d));
        ASSERT_EQ(a * (b + d), a * b + a * d);
        ASSERT_EQ(a.conj().conj(), a);
        ASSERT_TRUE((a - a).is_zero());
        if (!scaled && !b.is_zero()) {
            ASSERT_EQ(a / b * b, a);
        }
    }
}
