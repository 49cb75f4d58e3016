#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "weyl/automorphism_data.hpp"
#include "weyl/matrix.hpp"
#include "weyl/star.hpp"
#include "weyl/symplectic.hpp"

namespace weyl
{

namespace detail
{

enum class Pivot { Smallest, Largest };

// sigma_k with {z_k, b} = sigma_k * d b / d z_{partner(k)}
inline int bracket_sign(const Context &ctx, int k) { return ctx.is_position(k) ? -1 : 1; }

inline Monomial without_hbar(Monomial m)
{
    m.set_hpow(0);
    return m;
}

// hbar^j * a, dropping what falls past the truncation order.
inline WeylElement shift_hbar(const WeylElement &a, int j, const GaussianRational &scale = 1)
{
    std::vector<Term> out;
    out.reserve(a.size());
    for (const auto &[m, c] : a.terms()) {
        Monomial s = m;
        s.set_hpow(m.hpow() + j);
        out.emplace_back(s, scale.is_one() ? c : c * scale);
    }
    return WeylElement(a.context(), std::move(out));
}

// Extends an automorphism from generator images to all of W / X_{N+1}.
// Every z^alpha is rewritten through a linear factor:
//   z^alpha = z_k * z^beta - (hbar/2i) {z_k, z^beta},   beta = alpha - e_k,
// which is exact because the Moyal product with a linear factor stops at
// first order. Images of z^alpha are memoized for the lifetime of the object.
template <Pivot P = Pivot::Smallest>
class AutomorphismAction
{
public:
    explicit AutomorphismAction(const AutomorphismData &phi) : phi_(phi)
    {
        if (!phi_.is_graded()) {
            throw PreconditionError("automorphism does not map W_1 into X_1");
        }
        const int n = phi_.context().trunc();
        cpow_.reserve(static_cast<std::size_t>(n / 2 + 1));
        GaussianRational c = 1;
        for (int j = 0; j <= n / 2; ++j) {
            cpow_.push_back(c);
            c *= phi_.hbar_scale();
        }
    }

    WeylElement operator()(const WeylElement &a)
    {
        require_same(phi_.context(), a.context());
        TermAccumulator acc(a.context());
        for (const auto &[m, c] : a.terms()) {
            const int j = m.hpow();
            const WeylElement &img = monomial_image(without_hbar(m));
            const GaussianRational s = c * cpow_[static_cast<std::size_t>(j)];
            for (const auto &[mi, ci] : img.terms()) {
                Monomial out = mi;
                out.set_hpow(mi.hpow() + j);
                acc.add(out, ci * s);
            }
        }
        return std::move(acc).finish();
    }

    // Phi(z^alpha) for an hbar-free monomial.
    const WeylElement &monomial_image(const Monomial &alpha)
    {
        auto it = memo_.find(alpha);
        if (it != memo_.end()) {
            return it->second;
        }
        const Context &ctx = phi_.context();
        WeylElement r(ctx);
        if (alpha.degree() == 0) {
            r = WeylElement::constant(ctx, 1);
        } else if (alpha.degree() > ctx.trunc()) {
            // graded images keep the grade at least |alpha|
        } else {
            int k = pivot(alpha);
            Monomial beta = alpha;
            beta.set_exp(k, alpha.exp(k) - 1);
            const WeylElement &gk = phi_.image(k);
            const WeylElement &rest = monomial_image(beta);
            if constexpr (P == Pivot::Smallest) {
                r = moyal(gk, rest);
            } else {
                r = moyal(rest, gk);
            }
            const int kp = ctx.partner(k);
            if (const int e = beta.exp(kp); e > 0) {
                Monomial lower = beta;
                lower.set_exp(kp, e - 1);
                // -(c hbar/2i) sigma e Phi(z^lower) = (i/2) c sigma e hbar Phi(...) for the
                // left pivot; the right pivot flips the sign of the bracket.
                GaussianRational f = GaussianRational::fraction(bracket_sign(ctx, k) * e, 2).rotate(1) * phi_.hbar_scale();
                if constexpr (P == Pivot::Largest) {
                    f = -f;
                }
                r += shift_hbar(monomial_image(lower), 1, f);
            }
        }
        return memo_.emplace(alpha, std::move(r)).first->second;
    }

    const AutomorphismData &data() const noexcept { return phi_; }

private:
    static int pivot(const Monomial &alpha)
    {
        if constexpr (P == Pivot::Smallest) {
            for (int k = 0; k < alpha.nvars(); ++k) {
                if (alpha.exp(k) > 0) {
                    return k;
                }
            }
        } else {
            for (int k = alpha.nvars() - 1; k >= 0; --k) {
                if (alpha.exp(k) > 0) {
                    return k;
                }
            }
        }
        return -1;
    }

    const AutomorphismData &phi_;
    std::vector<GaussianRational> cpow_;
    std::unordered_map<Monomial, WeylElement, MonomialHash> memo_;
};

// Leibniz extension of a derivation through the same rewrite:
//   D(z^alpha) = D(z_k) * z^beta + z_k * D(z^beta) - (hbar/2i) {z_k, D-of-lower}.
class DerivationAction
{
public:
    explicit DerivationAction(const DerivationData &d) : d_(d) {}

    WeylElement operator()(const WeylElement &a)
    {
        require_same(d_.context(), a.context());
        TermAccumulator acc(a.context());
        for (const auto &[m, c] : a.terms()) {
            const int j = m.hpow();
            const WeylElement &img = monomial_image(without_hbar(m));
            for (const auto &[mi, ci] : img.terms()) {
                Monomial out = mi;
                out.set_hpow(mi.hpow() + j);
                acc.add(out, ci * c);
            }
        }
        return std::move(acc).finish();
    }

    const WeylElement &monomial_image(const Monomial &alpha)
    {
        auto it = memo_.find(alpha);
        if (it != memo_.end()) {
            return it->second;
        }
        const Context &ctx = d_.context();
        WeylElement r(ctx);
        if (alpha.degree() > 0 && alpha.degree() <= ctx.trunc()) {
            int k = 0;
            while (alpha.exp(k) == 0) {
                ++k;
            }
            Monomial beta = alpha;
            beta.set_exp(k, alpha.exp(k) - 1);
            r = moyal(d_.image(k), WeylElement::monomial(ctx, beta));
            r += moyal(WeylElement::variable(ctx, k), monomial_image(beta));
            const int kp = ctx.partner(k);
            if (const int e = beta.exp(kp); e > 0) {
                Monomial lower = beta;
                lower.set_exp(kp, e - 1);
                const GaussianRational f = GaussianRational::fraction(bracket_sign(ctx, k) * e, 2).rotate(1);
                r += shift_hbar(monomial_image(lower), 1, f);
            }
        }
        return memo_.emplace(alpha, std::move(r)).first->second;
    }

private:
    const DerivationData &d_;
    std::unordered_map<Monomial, WeylElement, MonomialHash> memo_;
};

} // namespace detail

// Phi(a) by linear extension from the generator images.
inline WeylElement apply(const AutomorphismData &phi, const WeylElement &a)
{
    detail::AutomorphismAction<> act(phi);
    return act(a);
}

inline WeylElement apply(const DerivationData &d, const WeylElement &a)
{
    detail::DerivationAction act(d);
    return act(a);
}

// zeta_k with (i/hbar)[zeta_k, z_l] = delta_kl: zeta = xi_p for x_p and
// zeta = -x_p for xi_p.
inline std::vector<WeylElement> dual_basis(Context ctx)
{
    std::vector<WeylElement> zeta;
    for (int k = 0; k < ctx.nvars(); ++k) {
        if (ctx.is_position(k)) {
            zeta.push_back(WeylElement::variable(ctx, ctx.partner(k)));
        } else {
            zeta.push_back(WeylElement::variable(ctx, ctx.partner(k), -1));
        }
    }
    return zeta;
}

// Matrix of the grade-1 parts of the images: L_{kl} = [z_l] G_k.
inline Matrix linear_part(const AutomorphismData &phi)
{
    const int n = phi.context().nvars();
    Matrix l(n);
    for (int k = 0; k < n; ++k) {
        for (int v = 0; v < n; ++v) {
            l(k, v) = phi.image(k).coefficient(Monomial::variable(n, v));
        }
    }
    return l;
}

struct MorphismReport {
    enum class Failure { None, NotGraded, Relation, Product };

    bool pass = true;
    Failure failure = Failure::None;
    // Relation failures: the generator pair. Product failures: the monomials.
    int k = -1;
    int l = -1;
    std::optional<Monomial> u;
    std::optional<Monomial> v;
    std::string detail;
};

namespace detail
{

// Every monomial hbar^j z^alpha with lo <= grade <= hi, in canonical order.
inline std::vector<Monomial> basis_monomials(const Context &ctx, int lo, int hi)
{
    std::vector<Monomial> out;
    const int n = ctx.nvars();
    for (int j = 0; 2 * j <= hi; ++j) {
        Monomial m(n);
        m.set_hpow(j);
        const int zmax = hi - 2 * j;
        // enumerate exponent vectors with |alpha| <= zmax
        std::vector<int> e(static_cast<std::size_t>(n), 0);
        while (true) {
            int deg = 0;
            for (int x : e) {
                deg += x;
            }
            if (deg <= zmax && 2 * j + deg >= lo) {
                Monomial t(j, e);
                out.push_back(t);
            }
            int s = 0;
            while (s < n) {
                if (deg < zmax) {
                    ++e[static_cast<std::size_t>(s)];
                    break;
                }
                deg -= e[static_cast<std::size_t>(s)];
                e[static_cast<std::size_t>(s)] = 0;
                ++s;
            }
            if (s == n) {
                break;
            }
        }
    }
    std::sort(out.begin(), out.end(), CanonicalLess{});
    return out;
}

} // namespace detail

// Checks (a) [G_k, G_l] = c (hbar/i) J_{kl} for all generator pairs and
// (b) Phi(u * v) = Phi(u) * Phi(v) on basis monomials with
// grade(u) + grade(v) <= max_grade. Failures are reported, not thrown.
inline MorphismReport verify_morphism(const AutomorphismData &phi, int max_grade)
{
    MorphismReport rep;
    const Context &ctx = phi.context();
    if (!phi.is_graded()) {
        rep.pass = false;
        rep.failure = MorphismReport::Failure::NotGraded;
        rep.detail = "a generator image has a grade-0 term";
        return rep;
    }
    const Matrix j = poisson_matrix(ctx.dim());
    const int n = ctx.nvars();
    for (int k = 0; k < n; ++k) {
        for (int l = k + 1; l < n; ++l) {
            // (hbar/i) = -i hbar
            const WeylElement want = (j(k, l) * phi.hbar_scale()).rotate(3) * WeylElement::hbar(ctx);
            if (!(commutator(phi.image(k), phi.image(l)) == want)) {
                rep.pass = false;
                rep.failure = MorphismReport::Failure::Relation;
                rep.k = k;
                rep.l = l;
                rep.detail = "commutation relation fails for generators " + std::to_string(k) + ", " + std::to_string(l);
                return rep;
            }
        }
    }
    detail::AutomorphismAction<> act(phi);
    const auto basis = detail::basis_monomials(ctx, 1, max_grade - 1);
    for (const auto &u : basis) {
        for (const auto &v : basis) {
            if (u.grade() + v.grade() > max_grade) {
                continue;
            }
            const WeylElement eu = WeylElement::monomial(ctx, u);
            const WeylElement ev = WeylElement::monomial(ctx, v);
            const WeylElement lhs = act(moyal(eu, ev));
            const WeylElement rhs = moyal(act(eu), act(ev));
            if (!(lhs == rhs)) {
                rep.pass = false;
                rep.failure = MorphismReport::Failure::Product;
                rep.u = u;
                rep.v = v;
                rep.detail = "star product not preserved";
                return rep;
            }
        }
    }
    return rep;
}

// Phi o Psi: first Psi, then Phi. Images are Phi(Psi(z_k)), hbar scales multiply.
inline AutomorphismData compose(const AutomorphismData &phi, const AutomorphismData &psi)
{
    require_same(phi.context(), psi.context());
    detail::AutomorphismAction<> act(phi);
    std::vector<WeylElement> images;
    for (const auto &g : psi.images()) {
        images.push_back(act(g));
    }
    return AutomorphismData(phi.context(), std::move(images), phi.hbar_scale() * psi.hbar_scale());
}

// D(z_k) = (i/hbar)[S, z_k]. S may carry one more grade than ctx.
inline DerivationData inner_derivation(const WeylElement &s, Context ctx)
{
    std::vector<WeylElement> images;
    for (int k = 0; k < ctx.nvars(); ++k) {
        images.push_back(detail::scaled_bracket_into(s, WeylElement::variable(ctx, k), ctx));
    }
    return DerivationData(ctx, std::move(images));
}

// exp(i ad S / hbar) on the generators: G_k = sum_m ad_S^m(z_k) / m!.
// S must lie in X_3; it may be given with truncation order N+1 (its grade
// N+1 part still moves images at grade N).
inline AutomorphismData inner_automorphism(const WeylElement &s, Context ctx)
{
    require_same_dim(s.context(), ctx);
    if (!in_filtration(s, 3)) {
        throw PreconditionError("inner_automorphism: generator must lie in X_3");
    }
    std::vector<WeylElement> images;
    for (int k = 0; k < ctx.nvars(); ++k) {
        WeylElement term = WeylElement::variable(ctx, k);
        WeylElement sum = term;
        for (int m = 1; !term.is_zero(); ++m) {
            term = GaussianRational::fraction(1, m) * detail::scaled_bracket_into(s, term, ctx);
            sum += term;
        }
        images.push_back(std::move(sum));
    }
    return AutomorphismData(ctx, std::move(images));
}

inline AutomorphismData inner_automorphism(const WeylElement &s) { return inner_automorphism(s, s.context()); }

// exp(D) = sum_m D^m / m! on the generators; D must send W_1 into X_2.
inline AutomorphismData exp_derivation(const DerivationData &d)
{
    if (!d.raises_to(2)) {
        throw PreconditionError("exp_derivation: derivation must send W_1 into X_2");
    }
    const Context &ctx = d.context();
    detail::DerivationAction act(d);
    std::vector<WeylElement> images;
    for (int k = 0; k < ctx.nvars(); ++k) {
        WeylElement term = WeylElement::variable(ctx, k);
        WeylElement sum = term;
        for (int m = 1; !term.is_zero(); ++m) {
            term = GaussianRational::fraction(1, m) * act(term);
            sum += term;
        }
        images.push_back(std::move(sum));
    }
    return AutomorphismData(ctx, std::move(images));
}

// log(Phi) = sum_m (-1)^(m+1) (Phi - Id)^m / m on the generators, for Phi
// in the kernel of the linear-part map (linear part = I, hbar fixed).
inline DerivationData log_automorphism(const AutomorphismData &phi)
{
    if (!phi.hbar_scale().is_one()) {
        throw PreconditionError("log_automorphism: hbar scale must be 1");
    }
    if (!phi.is_graded() || !linear_part(phi).is_identity()) {
        throw PreconditionError("log_automorphism: linear part must be the identity");
    }
    const Context &ctx = phi.context();
    detail::AutomorphismAction<> act(phi);
    std::vector<WeylElement> images;
    for (int k = 0; k < ctx.nvars(); ++k) {
        WeylElement power = WeylElement::variable(ctx, k);
        WeylElement sum(ctx);
        for (int m = 1;; ++m) {
            power = act(power) - power;
            if (power.is_zero()) {
                break;
            }
            sum += GaussianRational::fraction(m % 2 == 1 ? 1 : -1, m) * power;
        }
        images.push_back(std::move(sum));
    }
    return DerivationData(ctx, std::move(images));
}

// Inverse through the factorization Phi = L o Psi with L the conformal
// linear part and Psi in the kernel: Phi^-1 = exp(-log Psi) o L^-1.
inline AutomorphismData inverse(const AutomorphismData &phi)
{
    const Context &ctx = phi.context();
    if (!phi.is_graded()) {
        throw PreconditionError("inverse: automorphism is not graded");
    }
    const SympMatrix l(ctx.dim(), linear_part(phi));
    const AutomorphismData linv = conformal_pullback_automorphism(l.inverse(), ctx);
    const AutomorphismData kernel = compose(linv, phi);
    const DerivationData d = log_automorphism(kernel);
    std::vector<WeylElement> neg;
    for (const auto &g : d.images()) {
        neg.push_back(-g);
    }
    return compose(exp_derivation(DerivationData(ctx, std::move(neg))), linv);
}

// Phi mod hbar is real: the hbar-free part of every image has real coefficients.
inline bool is_real(const AutomorphismData &phi)
{
    for (const auto &g : phi.images()) {
        for (const auto &[m, c] : g.terms()) {
            if (m.hpow() == 0 && !c.is_real()) {
                return false;
            }
        }
    }
    return true;
}

} // namespace weyl
