#include <gtest/gtest.h>

#include "support.hpp"

using namespace weyl;
using weyl::test::automorphism;
using weyl::test::E;
using weyl::test::matrix;

namespace
{

FactorErrorCode factor_code(const AutomorphismData &phi)
{
    try {
        factor(phi);
    } catch (const FactorError &e) {
        return e.code();
    }
    ADD_FAILURE() << "factor did not fail";
    return FactorErrorCode::ResidualMismatch;
}

} // namespace

TEST(Closedness, Examples)
{
    const Context ctx(1, 8);
    EXPECT_TRUE(closedness_check(inner_derivation(E("x1^3", ctx), ctx)));
    EXPECT_TRUE(closedness_check(DerivationData::zero(ctx)));
    // D(x) = 0, D(p) = -p^2: g = (p^2, 0) is not closed
    EXPECT_FALSE(closedness_check(DerivationData(ctx, {E("0", ctx), E("-p1^2", ctx)})));
}

TEST(GradientForm, IsDerivativeOfGenerator)
{
    const Context ctx(2, 8);
    Rng rng(5);
    for (int t = 0; t < 5; ++t) {
        const WeylElement s = random_generator(rng, ctx, 5, true);
        const auto g = gradient_form(inner_derivation(s, ctx));
        for (int k = 0; k < ctx.nvars(); ++k) {
            EXPECT_EQ(g[static_cast<std::size_t>(k)], retruncate(partial(s, k), ctx));
        }
    }
}

TEST(Poincare, Examples)
{
    const Context ctx(1, 6);
    const std::vector<WeylElement> g1{E("2*x1*p1", ctx), E("x1^2", ctx)};
    EXPECT_EQ(poincare_integrate(g1), E("x1^2*p1", ctx.with_trunc(7)));
    const std::vector<WeylElement> g2{E("3*x1^2", ctx), E("0", ctx)};
    EXPECT_EQ(poincare_integrate(g2), E("x1^3", ctx.with_trunc(7)));
    const std::vector<WeylElement> g3{E("0", ctx), E("0", ctx)};
    EXPECT_TRUE(poincare_integrate(g3).is_zero());
    // z-free parts integrate to linear terms
    const std::vector<WeylElement> g4{E("h", ctx), E("2", ctx)};
    EXPECT_EQ(poincare_integrate(g4), E("h*x1 + 2*p1", ctx.with_trunc(7)));
    const std::vector<WeylElement> bad{E("p1^2", ctx), E("0", ctx)};
    EXPECT_THROW(poincare_integrate(bad), PreconditionError);
}

TEST(Factor, Examples)
{
    const Context ctx(1, 8);
    const auto id = factor(AutomorphismData::identity(ctx));
    EXPECT_TRUE(id.matrix.matrix().is_identity());
    EXPECT_TRUE(id.generator.is_zero());
    EXPECT_TRUE(id.residual.pass);

    const auto r = factor(automorphism(ctx, {"x1", "p1 - 3*x1^2"}));
    EXPECT_TRUE(r.matrix.matrix().is_identity());
    EXPECT_EQ(r.generator, E("x1^3", ctx.with_trunc(9)));

    const SympMatrix m = matrix(1, {0, -1, 1, 0});
    const auto lin = factor(pullback_automorphism(m, ctx));
    EXPECT_EQ(lin.matrix, m);
    EXPECT_TRUE(lin.generator.is_zero());
}

TEST(Factor, ErrorCodes)
{
    const Context ctx(1, 8);
    EXPECT_EQ(factor_code(automorphism(ctx, {"x1 + 1", "p1"})), FactorErrorCode::ImageNotInX1);
    EXPECT_EQ(factor_code(automorphism(ctx, {"x1 + p1^2", "x1"})), FactorErrorCode::LinearPartSingular);
    EXPECT_EQ(factor_code(automorphism(ctx, {"2*x1", "p1"})), FactorErrorCode::LinearPartNotSymplectic);
    EXPECT_EQ(factor_code(automorphism(ctx, {"x1", "2*p1"}, 2)), FactorErrorCode::HbarScaleNotOne);
    EXPECT_EQ(factor_code(automorphism(ctx, {"x1 + p1^2", "p1 + x1^2"})), FactorErrorCode::NotMorphism);
    // a top-grade perturbation commutes away under truncation but its
    // logarithm is not Hamiltonian
    EXPECT_EQ(factor_code(automorphism(ctx, {"x1", "p1 + p1^8"})), FactorErrorCode::ClosednessFailure);
    EXPECT_STREQ(to_string(FactorErrorCode::ResidualMismatch), "residual-mismatch");
}

TEST(KernelCheck, Examples)
{
    const Context ctx(1, 8);
    EXPECT_TRUE(kernel_check(inner_automorphism(E("x1^3 + h*p1", ctx))));
    EXPECT_FALSE(kernel_check(pullback_automorphism(matrix(1, {1, 1, 0, 1}), ctx)));
    EXPECT_FALSE(kernel_check(automorphism(ctx, {"x1", "p1"}, 2)));
}

TEST(VerifyFactorization, ReportsLowestGradeMismatch)
{
    const Context ctx(1, 8);
    const WeylElement s = E("x1^3 + x1*p1^4", ctx.with_trunc(9));
    const AutomorphismData phi = inner_automorphism(s, ctx);
    EXPECT_TRUE(verify_factorization(phi, SympMatrix::identity(1), s).pass);

    // a grade-7 change in S shows up at grade 6
    const WeylElement s2 = s + E("p1^7", ctx.with_trunc(9));
    const auto rep = verify_factorization(phi, SympMatrix::identity(1), s2);
    EXPECT_FALSE(rep.pass);
    ASSERT_TRUE(rep.first_mismatch.has_value());
    EXPECT_EQ(rep.first_mismatch->grade, 6);
    EXPECT_EQ(rep.first_mismatch->generator, 0);
    EXPECT_FALSE(rep.generators[0].pass);

    // a wrong matrix breaks grade 1
    const auto wrong = verify_factorization(phi, matrix(1, {1, 1, 0, 1}), s);
    ASSERT_TRUE(wrong.first_mismatch.has_value());
    EXPECT_EQ(wrong.first_mismatch->grade, 1);
}

class FactorRoundTrip : public ::testing::TestWithParam<int>
{
};

TEST_P(FactorRoundTrip, RecoversHiddenFactors)
{
    const int dim = GetParam();
    const Context ctx(dim, dim == 3 ? 6 : 8);
    Rng rng(100 + static_cast<std::uint64_t>(dim));
    for (int t = 0; t < 6; ++t) {
        const bool complex = t % 2 == 1;
        const SympMatrix m = random_symplectic(dim, rng.next(), rng.range(0, 8), complex);
        const WeylElement s = random_generator(rng, ctx, rng.range(0, 8), complex);
        const AutomorphismData phi = compose(pullback_automorphism(m, ctx), inner_automorphism(s, ctx));
        const FactorizationResult r = factor(phi);
        EXPECT_EQ(r.matrix, m);
        EXPECT_EQ(r.generator, s);
        EXPECT_TRUE(r.residual.pass);
        // deterministic
        const FactorizationResult again = factor(phi);
        EXPECT_EQ(again.matrix, r.matrix);
        EXPECT_EQ(again.generator, r.generator);
        EXPECT_EQ(again.residual, r.residual);
    }
}

INSTANTIATE_TEST_SUITE_P(Dims, FactorRoundTrip, ::testing::Values(1, 2, 3));

TEST(Factor, EveryMorphismFactors)
{
    // any inner automorphism composed with a symplectic pullback factors,
    // including ones built by composing several inner pieces
    const Context ctx(2, 7);
    Rng rng(200);
    for (int t = 0; t < 4; ++t) {
        AutomorphismData phi = AutomorphismData::identity(ctx);
        for (int k = 0; k < 3; ++k) {
            phi = compose(phi, inner_automorphism(random_generator(rng, ctx, 3), ctx));
            phi = compose(phi, pullback_automorphism(random_symplectic(2, rng.next(), 3), ctx));
        }
        const FactorizationResult r = factor(phi);
        EXPECT_EQ(compose(pullback_automorphism(r.matrix, ctx), inner_automorphism(r.generator, ctx)), phi);
    }
}
