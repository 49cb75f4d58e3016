#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "weyl/automorphism_data.hpp"
#include "weyl/matrix.hpp"
#include "weyl/rng.hpp"
#include "weyl/star.hpp"

namespace weyl
{

// An invertible 2d x 2d matrix acting on symbols by z -> M z.
class SympMatrix
{
public:
    SympMatrix(int dim, Matrix m) : dim_(dim), m_(std::move(m))
    {
        if (m_.size() != 2 * dim_) {
            throw PreconditionError("matrix must be 2d x 2d");
        }
        if (!m_.is_invertible()) {
            throw SingularMatrixError("matrix is not invertible");
        }
    }

    static SympMatrix identity(int dim) { return SympMatrix(dim, Matrix::identity(2 * dim), Trusted{}); }

    int dim() const noexcept { return dim_; }
    const Matrix &matrix() const noexcept { return m_; }
    const GaussianRational &operator()(int r, int c) const { return m_(r, c); }

    SympMatrix inverse() const { return SympMatrix(dim_, m_.inverse(), Trusted{}); }

    friend SympMatrix operator*(const SympMatrix &a, const SympMatrix &b)
    {
        if (a.dim_ != b.dim_) {
            throw PreconditionError("matrix dimension mismatch");
        }
        return SympMatrix(a.dim_, a.m_ * b.m_, Trusted{});
    }

    friend bool operator==(const SympMatrix &a, const SympMatrix &b) { return a.dim_ == b.dim_ && a.m_ == b.m_; }

private:
    struct Trusted {
    };
    SympMatrix(int dim, Matrix m, Trusted) : dim_(dim), m_(std::move(m)) {}

    int dim_;
    Matrix m_;
};

// J_{kl} = {z_k, z_l}, read off the Poisson bracket on the linear basis so
// that the matrix convention can never drift from poisson().
inline Matrix poisson_matrix(int dim)
{
    const Context ctx(dim, kMinTrunc);
    Matrix j(ctx.nvars());
    for (int k = 0; k < ctx.nvars(); ++k) {
        for (int l = 0; l < ctx.nvars(); ++l) {
            j(k, l) = poisson(WeylElement::variable(ctx, k), WeylElement::variable(ctx, l)).coefficient(Monomial(ctx.nvars()));
        }
    }
    return j;
}

// M^T J M = J
inline bool is_symplectic(const SympMatrix &m)
{
    const Matrix j = poisson_matrix(m.dim());
    return m.matrix().transpose() * j * m.matrix() == j;
}

// The c with M^T J M = c J; throws PreconditionError when M is not
// conformally symplectic.
inline GaussianRational conformal_factor(const SympMatrix &m)
{
    const Matrix j = poisson_matrix(m.dim());
    const Matrix g = m.matrix().transpose() * j * m.matrix();
    // J(xi_1, x_1) = 1 fixes the candidate
    const GaussianRational c = g(m.dim(), 0);
    if (c.is_zero() || !(g == c * j)) {
        throw PreconditionError("matrix is not conformally symplectic");
    }
    return c;
}

// a(z) -> a(M z), hbar untouched, truncated at the context order.
inline WeylElement pullback(const SympMatrix &m, const WeylElement &a)
{
    const Context &ctx = a.context();
    if (m.dim() != ctx.dim()) {
        throw ContextError("pullback: matrix dimension does not match the element");
    }
    const int n = ctx.nvars();
    std::vector<WeylElement> rows;
    for (int k = 0; k < n; ++k) {
        std::vector<Term> t;
        for (int l = 0; l < n; ++l) {
            t.emplace_back(Monomial::variable(n, l), m(k, l));
        }
        rows.emplace_back(ctx, std::move(t));
    }
    // images of z^alpha, built by peeling the first positive exponent
    std::unordered_map<Monomial, WeylElement, MonomialHash> memo;
    auto image = [&](auto &&self, const Monomial &alpha) -> const WeylElement & {
        auto it = memo.find(alpha);
        if (it != memo.end()) {
            return it->second;
        }
        WeylElement r(ctx);
        if (alpha.degree() == 0) {
            r = WeylElement::constant(ctx, 1);
        } else {
            int k = 0;
            while (alpha.exp(k) == 0) {
                ++k;
            }
            Monomial rest = alpha;
            rest.set_exp(k, alpha.exp(k) - 1);
            r = cmul(rows[static_cast<std::size_t>(k)], self(self, rest));
        }
        return memo.emplace(alpha, std::move(r)).first->second;
    };
    TermAccumulator acc(ctx);
    for (const auto &[mono, c] : a.terms()) {
        Monomial alpha = mono;
        alpha.set_hpow(0);
        const WeylElement &img = image(image, alpha);
        for (const auto &[mi, ci] : img.terms()) {
            Monomial out = mi;
            out.set_hpow(mono.hpow());
            acc.add(out, ci * c);
        }
    }
    return std::move(acc).finish();
}

// Linear automorphism z -> M z for conformally symplectic M, with
// hbar -> c*hbar where M^T J M = c J.
inline AutomorphismData conformal_pullback_automorphism(const SympMatrix &m, Context ctx)
{
    if (m.dim() != ctx.dim()) {
        throw ContextError("matrix dimension does not match the context");
    }
    const GaussianRational c = conformal_factor(m);
    std::vector<WeylElement> images;
    for (int k = 0; k < ctx.nvars(); ++k) {
        images.push_back(pullback(m, WeylElement::variable(ctx, k)));
    }
    return AutomorphismData(ctx, std::move(images), c);
}

// G_k = (M z)_k with hbar fixed. Requires M symplectic.
inline AutomorphismData pullback_automorphism(const SympMatrix &m, Context ctx)
{
    if (!is_symplectic(m)) {
        throw PreconditionError("pullback_automorphism: matrix is not symplectic");
    }
    return conformal_pullback_automorphism(m, ctx);
}

namespace detail
{

inline GaussianRational random_parameter(Rng &rng, bool complex)
{
    int num = rng.range(1, 3) * (rng.coin() ? 1 : -1);
    int den = rng.range(1, 3);
    GaussianRational t = GaussianRational::fraction(num, den);
    if (complex && rng.coin()) {
        t = t * GaussianRational::i();
    }
    return t;
}

} // namespace detail

// Product of `steps` elementary symplectic matrices: symmetric shears in the
// upper and lower blocks, signed swaps x_p -> xi_p, xi_p -> -x_p, and (for
// d >= 2) block-diagonal mixes diag(A, A^-T). Parameters are small
// rationals, optionally purely imaginary.
inline SympMatrix random_symplectic(int dim, std::uint64_t seed, int steps, bool complex = false)
{
    if (steps < 0) {
        throw PreconditionError("random_symplectic: steps must be nonnegative");
    }
    Rng rng(seed);
    const int n = 2 * dim;
    Matrix acc = Matrix::identity(n);
    for (int s = 0; s < steps; ++s) {
        Matrix g = Matrix::identity(n);
        const int kinds = dim >= 2 ? 4 : 3;
        const int kind = rng.below(kinds);
        const int p = rng.below(dim);
        const int q = rng.below(dim);
        switch (kind) {
            case 0: {
                // x_p -> x_p + t xi_q (and symmetric partner)
                const GaussianRational t = detail::random_parameter(rng, complex);
                g(p, dim + q) += t;
                if (p != q) {
                    g(q, dim + p) += t;
                }
                break;
            }
            case 1: {
                const GaussianRational t = detail::random_parameter(rng, complex);
                g(dim + p, q) += t;
                if (p != q) {
                    g(dim + q, p) += t;
                }
                break;
            }
            case 2:
                g(p, p) = 0;
                g(dim + p, dim + p) = 0;
                g(p, dim + p) = 1;
                g(dim + p, p) = -1;
                break;
            default: {
                const int r = (p + 1 + rng.below(dim - 1)) % dim;
                const GaussianRational t = detail::random_parameter(rng, complex);
                g(p, r) = t;
                g(dim + r, dim + p) = -t;
                break;
            }
        }
        acc = acc * g;
    }
    return SympMatrix(dim, std::move(acc));
}

} // namespace weyl
