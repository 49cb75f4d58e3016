#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weyl/automorphism.hpp"

namespace weyl
{

enum class FactorErrorCode {
    ImageNotInX1,
    LinearPartSingular,
    LinearPartNotSymplectic,
    HbarScaleNotOne,
    NotMorphism,
    ClosednessFailure,
    ResidualMismatch,
};

inline const char *to_string(FactorErrorCode c)
{
    switch (c) {
        case FactorErrorCode::ImageNotInX1:
            return "image-not-in-X1";
        case FactorErrorCode::LinearPartSingular:
            return "linear-part-singular";
        case FactorErrorCode::LinearPartNotSymplectic:
            return "linear-part-not-symplectic";
        case FactorErrorCode::HbarScaleNotOne:
            return "hbar-scale-not-one";
        case FactorErrorCode::NotMorphism:
            return "not-a-morphism";
        case FactorErrorCode::ClosednessFailure:
            return "closedness-failure";
        case FactorErrorCode::ResidualMismatch:
            return "residual-mismatch";
    }
    return "unknown";
}

class FactorError : public Error
{
public:
    FactorError(FactorErrorCode code, const std::string &what) : Error(std::string(to_string(code)) + ": " + what), code_(code) {}

    FactorErrorCode code() const noexcept { return code_; }

private:
    FactorErrorCode code_;
};

struct GeneratorResidual {
    int index = 0;
    int max_grade = 0;
    bool pass = true;

    friend bool operator==(const GeneratorResidual &, const GeneratorResidual &) = default;
};

struct Mismatch {
    int generator = 0;
    int grade = 0;
    Monomial monomial;
    GaussianRational expected;
    GaussianRational actual;

    friend bool operator==(const Mismatch &, const Mismatch &) = default;
};

struct ResidualReport {
    bool pass = true;
    std::vector<GeneratorResidual> generators;
    std::optional<Mismatch> first_mismatch;

    friend bool operator==(const ResidualReport &, const ResidualReport &) = default;
};

// Phi = pullback_automorphism(matrix) o inner_automorphism(generator).
// The generator carries truncation order N+1.
struct FactorizationResult {
    SympMatrix matrix;
    WeylElement generator;
    ResidualReport residual;
};

struct FactorOptions {
    // grade bound handed to verify_morphism before factoring
    int morphism_check_grade = 2;
};

// z -> M z on the generators with hbar fixed, without any symplecticity check.
inline AutomorphismData linear_automorphism(const SympMatrix &m, Context ctx)
{
    if (m.dim() != ctx.dim()) {
        throw ContextError("matrix dimension does not match the context");
    }
    std::vector<WeylElement> images;
    for (int k = 0; k < ctx.nvars(); ++k) {
        images.push_back(pullback(m, WeylElement::variable(ctx, k)));
    }
    return AutomorphismData(ctx, std::move(images));
}

// g_k = -D(zeta_k). For an inner derivation D = (i/hbar)[S, .] this is
// dS/dz_k, since (i/hbar)[zeta_k, w] = dw/dz_k.
inline std::vector<WeylElement> gradient_form(const DerivationData &d)
{
    const Context &ctx = d.context();
    std::vector<WeylElement> g;
    for (int k = 0; k < ctx.nvars(); ++k) {
        const int kp = ctx.partner(k);
        // zeta(x_p) = xi_p, zeta(xi_p) = -x_p
        g.push_back(ctx.is_position(k) ? -d.image(kp) : d.image(kp));
    }
    return g;
}

// d g_k / d z_l = d g_l / d z_k for all k, l.
inline bool is_closed(std::span<const WeylElement> g)
{
    for (std::size_t k = 0; k < g.size(); ++k) {
        for (std::size_t l = k + 1; l < g.size(); ++l) {
            if (!(partial(g[k], static_cast<int>(l)) == partial(g[l], static_cast<int>(k)))) {
                return false;
            }
        }
    }
    return true;
}

inline bool closedness_check(const DerivationData &d)
{
    const auto g = gradient_form(d);
    return is_closed(g);
}

// The unique S without z-free terms and with dS/dz_k = g_k, by radial
// integration of each homogeneous piece: a piece of z-degree m contributes
// z_k g_k / (m + 1). The result carries one more grade than g.
inline WeylElement poincare_integrate(std::span<const WeylElement> g)
{
    if (g.empty()) {
        throw PreconditionError("poincare_integrate: empty form");
    }
    const Context ctx = g.front().context();
    if (g.size() != static_cast<std::size_t>(ctx.nvars())) {
        throw PreconditionError("poincare_integrate: need one component per variable");
    }
    if (!is_closed(g)) {
        throw PreconditionError("poincare_integrate: form is not closed");
    }
    const Context out = ctx.with_trunc(ctx.trunc() + 1);
    TermAccumulator acc(out);
    for (int k = 0; k < ctx.nvars(); ++k) {
        require_same(ctx, g[static_cast<std::size_t>(k)].context());
        for (const auto &[m, c] : g[static_cast<std::size_t>(k)].terms()) {
            Monomial s = m;
            s.set_exp(k, m.exp(k) + 1);
            acc.add(s, c * GaussianRational::fraction(1, m.degree() + 1));
        }
    }
    WeylElement s = std::move(acc).finish();
    for (int k = 0; k < ctx.nvars(); ++k) {
        if (!(partial(s, k) == retruncate(g[static_cast<std::size_t>(k)], out))) {
            throw PreconditionError("poincare_integrate: inconsistent system");
        }
    }
    return s;
}

// Recomposes pullback(M) o inner(S) and compares every generator image with
// Phi through grade N. The first mismatch is the lowest-grade difference,
// ties broken by generator index and then canonical monomial order.
inline ResidualReport verify_factorization(const AutomorphismData &phi, const SympMatrix &m, const WeylElement &s)
{
    const Context &ctx = phi.context();
    const AutomorphismData rebuilt = compose(linear_automorphism(m, ctx), inner_automorphism(s, ctx));
    ResidualReport rep;
    for (int k = 0; k < ctx.nvars(); ++k) {
        const WeylElement diff = rebuilt.image(k) - phi.image(k);
        GeneratorResidual gr{k, ctx.trunc(), diff.is_zero()};
        rep.generators.push_back(gr);
        if (diff.is_zero()) {
            continue;
        }
        rep.pass = false;
        const Monomial &mono = diff.terms().front().first;
        if (!rep.first_mismatch || mono.grade() < rep.first_mismatch->grade) {
            rep.first_mismatch =
                Mismatch{k, mono.grade(), mono, phi.image(k).coefficient(mono), rebuilt.image(k).coefficient(mono)};
        }
    }
    // the recomposition always fixes hbar
    if (!phi.hbar_scale().is_one()) {
        rep.pass = false;
    }
    return rep;
}

// Phi is inner: linear part I and hbar fixed.
inline bool kernel_check(const AutomorphismData &phi)
{
    return phi.hbar_scale().is_one() && linear_part(phi).is_identity();
}

// Splits a graded, hbar-preserving automorphism as
//   Phi = pullback_automorphism(M) o inner_automorphism(S)
// via linear part -> kernel quotient -> logarithm -> closed 1-form -> S.
inline FactorizationResult factor(const AutomorphismData &phi, const FactorOptions &opts = {})
{
    const Context &ctx = phi.context();
    if (!phi.is_graded()) {
        throw FactorError(FactorErrorCode::ImageNotInX1, "a generator image has a grade-0 term");
    }
    if (!phi.hbar_scale().is_one()) {
        throw FactorError(FactorErrorCode::HbarScaleNotOne, "hbar scale is " + phi.hbar_scale().to_string());
    }
    const Matrix lin = linear_part(phi);
    if (!lin.is_invertible()) {
        throw FactorError(FactorErrorCode::LinearPartSingular, "linear part is not invertible");
    }
    const SympMatrix m(ctx.dim(), lin);
    if (!is_symplectic(m)) {
        throw FactorError(FactorErrorCode::LinearPartNotSymplectic, "linear part is not symplectic");
    }
    if (const auto rep = verify_morphism(phi, opts.morphism_check_grade); !rep.pass) {
        throw FactorError(FactorErrorCode::NotMorphism, rep.detail);
    }

    const AutomorphismData kernel = compose(pullback_automorphism(m.inverse(), ctx), phi);
    if (!kernel_check(kernel)) {
        throw InternalError("quotient by the linear part is not in the kernel");
    }
    const DerivationData d = log_automorphism(kernel);
    const auto g = gradient_form(d);
    if (!is_closed(g)) {
        throw FactorError(FactorErrorCode::ClosednessFailure, "logarithm is not an inner derivation");
    }
    WeylElement s = poincare_integrate(g);
    ResidualReport rep = verify_factorization(phi, m, s);
    if (!rep.pass) {
        throw FactorError(FactorErrorCode::ResidualMismatch, "recomposition differs from the input");
    }
    return FactorizationResult{m, std::move(s), std::move(rep)};
}

} // namespace weyl
