#include <gtest/gtest.h>

#include "support.hpp"

using namespace weyl;
using weyl::test::E;

TEST(GaussianRational, CanonicalFractions)
{
    const GaussianRational half = GaussianRational::fraction(2, 4);
    EXPECT_EQ(half.re().get_num(), 1);
    EXPECT_EQ(half.re().get_den(), 2);
    const GaussianRational neg = GaussianRational::fraction(1, -2);
    EXPECT_EQ(neg.re().get_num(), -1);
    EXPECT_EQ(neg.re().get_den(), 2);
    const GaussianRational zero = GaussianRational(3) - GaussianRational(3);
    EXPECT_TRUE(zero.is_zero());
    EXPECT_EQ(zero.re().get_den(), 1);
    EXPECT_EQ(zero.im().get_den(), 1);
}

TEST(GaussianRational, FieldOperations)
{
    const GaussianRational i = GaussianRational::i();
    EXPECT_EQ(i * i, GaussianRational(-1));
    const GaussianRational a(Rational(1, 2), Rational(1, 3));
    const GaussianRational b(Rational(-3, 4), Rational(5));
    EXPECT_EQ((a * b) / b, a);
    EXPECT_EQ((a + b) - b, a);
    EXPECT_EQ(a.rotate(1), a * i);
    EXPECT_EQ(a.rotate(3), a * i * i * i);
    EXPECT_THROW(a / GaussianRational(0), PreconditionError);
    EXPECT_THROW(GaussianRational::fraction(1, 0), PreconditionError);
}

TEST(GaussianRational, ScalarStrings)
{
    EXPECT_EQ(GaussianRational::fraction(-1, 2).to_string(), "-1/2");
    EXPECT_EQ(GaussianRational::i().to_string(), "i");
    EXPECT_EQ((GaussianRational(-2) * GaussianRational::i()).to_string(), "-2*i");
    EXPECT_EQ(GaussianRational(Rational(1, 2), Rational(-3, 4)).to_string(), "1/2-3/4*i");
}

TEST(Context, Validation)
{
    EXPECT_THROW(Context(0, 8), ContextError);
    EXPECT_THROW(Context(1, 3), ContextError);
    EXPECT_THROW(Context(kMaxDim + 1, 8), ContextError);
    EXPECT_NO_THROW(Context(1, 4));
}

TEST(Monomial, Grade)
{
    EXPECT_EQ(grade(Monomial(2)), 0);
    const std::vector<int> e{1, 3};
    EXPECT_EQ(grade(Monomial(2, e)), 8);
    Monomial h(2);
    h.set_hpow(1);
    EXPECT_EQ(grade(h), 2);
}

TEST(ScalarPoly, RingOperations)
{
    const Context ctx(1, 8);
    EXPECT_EQ(cmul(E("x1", ctx), E("p1", ctx)), E("x1*p1", ctx));
    EXPECT_TRUE(add(E("x1", ctx), scale(-1, E("x1", ctx))).is_zero());
    const Context c4(1, 4);
    EXPECT_TRUE(cmul(E("x1^2", c4), E("p1^3", c4)).is_zero());
}

TEST(ScalarPoly, ContextMismatch)
{
    const Context a(1, 8);
    const Context b(1, 6);
    EXPECT_THROW(E("x1", a) + E("x1", b), ContextError);
    EXPECT_THROW(cmul(E("x1", a), E("x1", b)), ContextError);
}

TEST(ScalarPoly, Project)
{
    const Context ctx(1, 8);
    EXPECT_EQ(project(E("x1*p1 + (1/2)*i*h", ctx), 2), E("x1*p1 + (1/2)*i*h", ctx));
    EXPECT_EQ(project(E("x1 + x1^3", ctx), 1), E("x1", ctx));
    EXPECT_TRUE(project(E("x1 + x1^3", ctx), 2).is_zero());
}

TEST(ScalarPoly, LowestGrade)
{
    const Context ctx(1, 8);
    EXPECT_EQ(lowest_grade(E("x1^3 + h^2*x1", ctx)), 3);
    EXPECT_EQ(lowest_grade(WeylElement(ctx)), std::nullopt);
    EXPECT_EQ(lowest_grade(E("h", ctx)), 2);
}

TEST(ScalarPoly, Partial)
{
    const Context ctx(1, 8);
    EXPECT_EQ(partial(E("x1^2*p1", ctx), ctx.x(0)), E("2*x1*p1", ctx));
    EXPECT_TRUE(partial(E("h*x1", ctx), ctx.xi(0)).is_zero());
    EXPECT_EQ(partial(E("x1^3", ctx), ctx.x(0)), E("3*x1^2", ctx));
    EXPECT_THROW(partial(E("x1", ctx), 2), PreconditionError);
    EXPECT_THROW(partial(E("x1", ctx), -1), PreconditionError);
}

class ScalarPolyProperties : public ::testing::TestWithParam<int>
{
};

TEST_P(ScalarPolyProperties, TruncationCongruence)
{
    const int dim = GetParam();
    const Context hi(dim, 12);
    const Context lo(dim, 6);
    Rng rng(1000 + static_cast<std::uint64_t>(dim));
    for (int t = 0; t < 50; ++t) {
        RandomTermOptions opt{0, 8, 6, true, false};
        const WeylElement a = random_element(rng, hi, opt);
        const WeylElement b = random_element(rng, hi, opt);
        const GaussianRational s = random_coefficient(rng, true);
        EXPECT_EQ(retruncate(cmul(a, b), lo), cmul(retruncate(a, lo), retruncate(b, lo)));
        EXPECT_EQ(retruncate(a + b, lo), retruncate(a, lo) + retruncate(b, lo));
        EXPECT_EQ(retruncate(s * a, lo), s * retruncate(a, lo));
    }
}

TEST_P(ScalarPolyProperties, CanonicalFormAndGrades)
{
    const int dim = GetParam();
    const Context ctx(dim, 10);
    Rng rng(2000 + static_cast<std::uint64_t>(dim));
    for (int t = 0; t < 50; ++t) {
        RandomTermOptions opt{0, 5, 6, true, false};
        const WeylElement a = random_element(rng, ctx, opt);
        const WeylElement b = random_element(rng, ctx, opt);
        EXPECT_TRUE((a + (-1) * a).is_zero());
        const WeylElement ab = cmul(a, b);
        for (const auto &[m, c] : ab.terms()) {
            EXPECT_FALSE(c.is_zero());
            EXPECT_LE(m.grade(), ctx.trunc());
        }
        for (const auto &[ma, ca] : a.terms()) {
            for (const auto &[mb, cb] : b.terms()) {
                EXPECT_EQ(grade(ma * mb), grade(ma) + grade(mb));
            }
            for (int k = 0; k < ctx.nvars(); ++k) {
                if (ma.exp(k) > 0) {
                    const WeylElement d = partial(WeylElement::monomial(ctx, ma), k);
                    ASSERT_EQ(d.size(), 1u);
                    EXPECT_EQ(d.terms().front().first.grade(), ma.grade() - 1);
                }
            }
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Dims, ScalarPolyProperties, ::testing::Values(1, 2, 3));
