#pragma once

#include <array>
#include <cstdint>

#include "weyl/element.hpp"

namespace weyl
{

namespace detail
{

// C(n, k) * n'(n'-1)...(n'-k+1), the per-direction weight of a k-fold
// bidifferential contraction. Returns false on int64 overflow.
inline bool contraction_weight(int n_left, int n_right, int k, std::int64_t &out)
{
    std::int64_t w = 1;
    for (int t = 0; t < k; ++t) {
        // binomial built incrementally stays integral at every step
        if (__builtin_mul_overflow(w, n_left - t, &w)) {
            return false;
        }
        w /= (t + 1);
        if (__builtin_mul_overflow(w, n_right - t, &w)) {
            return false;
        }
    }
    out = w;
    return true;
}

inline Integer contraction_weight_big(int n_left, int n_right, int k)
{
    Integer w = 1;
    for (int t = 0; t < k; ++t) {
        w *= (n_left - t);
        w /= (t + 1);
        w *= (n_right - t);
    }
    return w;
}

enum class StarMode {
    Full,      // a * b
    OddTwice,  // a * b - b * a: only odd orders survive, each doubled
};

// One contraction slot: a derivative in `left_var` on the left factor paired
// with a derivative in `right_var` on the right factor.
struct Slot {
    int left_var;
    int right_var;
    int pair;   // index p of the (x_p, xi_p) plane
    bool minus; // second summand of the Moyal operator carries a sign
    int max_take;
};

// Expanded bidifferential Moyal formula on two monomials:
//   u * v = sum over take-vectors beta of (hbar/2i)^|beta|
//           prod_slots sign^beta C(.,beta) falling(.,beta) z^(...)
// The sum of 1/j! P^j is expanded multinomially, so 1/beta! folds into the
// binomials. Calls sink(monomial, coefficient) for every nonzero term.
template <typename Sink>
void star_monomials(const Monomial &u, const Monomial &v, const GaussianRational &cuv, int dim, StarMode mode,
                    Sink &&sink)
{
    std::array<Slot, Monomial::kSlots> slots;
    int nslots = 0;
    for (int p = 0; p < dim; ++p) {
        // left d/dxi_p, right d/dx_p
        int s = std::min(u.exp(dim + p), v.exp(p));
        if (s > 0) {
            slots[static_cast<std::size_t>(nslots++)] = {dim + p, p, p, false, s};
        }
        // left d/dx_p, right d/dxi_p, with a minus sign
        int t = std::min(u.exp(p), v.exp(dim + p));
        if (t > 0) {
            slots[static_cast<std::size_t>(nslots++)] = {p, dim + p, p, true, t};
        }
    }

    const Monomial base = u * v;
    std::array<int, Monomial::kSlots> take{};

    auto emit = [&]() {
        int j = 0;
        bool negative = false;
        bool overflow = false;
        std::int64_t weight = 1;
        Monomial m = base;
        for (int s = 0; s < nslots; ++s) {
            const Slot &sl = slots[static_cast<std::size_t>(s)];
            const int k = take[static_cast<std::size_t>(s)];
            if (k == 0) {
                continue;
            }
            j += k;
            if (sl.minus && (k % 2 == 1)) {
                negative = !negative;
            }
            m.set_exp(sl.pair, m.exp(sl.pair) - k);
            m.set_exp(dim + sl.pair, m.exp(dim + sl.pair) - k);
            std::int64_t w = 0;
            if (!overflow && contraction_weight(u.exp(sl.left_var), v.exp(sl.right_var), k, w)) {
                if (__builtin_mul_overflow(weight, w, &weight)) {
                    overflow = true;
                }
            } else {
                overflow = true;
            }
        }
        if (mode == StarMode::OddTwice && j % 2 == 0) {
            return;
        }
        Integer num;
        if (overflow) {
            num = 1;
            for (int s = 0; s < nslots; ++s) {
                const Slot &sl = slots[static_cast<std::size_t>(s)];
                num *= contraction_weight_big(u.exp(sl.left_var), v.exp(sl.right_var), take[static_cast<std::size_t>(s)]);
            }
        } else {
            num = static_cast<long>(weight);
        }
        if (negative) {
            num = -num;
        }
        if (mode == StarMode::OddTwice) {
            num *= 2;
        }
        // (1/(2i))^j = (-i)^j / 2^j
        Integer den = 1;
        den <<= static_cast<mp_bitcnt_t>(j);
        Rational factor(num, den);
        factor.canonicalize();
        GaussianRational c = cuv;
        c *= factor;
        m.set_hpow(m.hpow() + j);
        sink(m, c.rotate(static_cast<unsigned>(3 * j)));
    };

    // odometer over take-vectors
    while (true) {
        emit();
        int s = 0;
        while (s < nslots) {
            auto &k = take[static_cast<std::size_t>(s)];
            if (k < slots[static_cast<std::size_t>(s)].max_take) {
                ++k;
                break;
            }
            k = 0;
            ++s;
        }
        if (s == nslots) {
            break;
        }
    }
}

// Runs star_monomials over all term pairs whose grade sum is at most
// max_pair_grade. Relies on the canonical order being grade-sorted.
template <typename Sink>
void star_terms(const WeylElement &a, const WeylElement &b, int max_pair_grade, StarMode mode, Sink &&sink)
{
    const int dim = a.context().dim();
    for (const auto &[ma, ca] : a.terms()) {
        const int budget = max_pair_grade - ma.grade();
        for (const auto &[mb, cb] : b.terms()) {
            if (mb.grade() > budget) {
                break;
            }
            star_monomials(ma, mb, ca * cb, dim, mode, sink);
        }
    }
}

// (i/hbar)[a, b] landing in `out`; a and b may carry different truncation
// orders as long as the dimension matches.
inline WeylElement scaled_bracket_into(const WeylElement &a, const WeylElement &b, Context out)
{
    require_same_dim(a.context(), b.context());
    require_same_dim(a.context(), out);
    TermAccumulator acc(out);
    star_terms(a, b, out.trunc() + 2, StarMode::OddTwice, [&](Monomial m, const GaussianRational &c) {
        if (m.hpow() == 0) {
            throw InternalError("commutator produced an hbar-free term");
        }
        m.set_hpow(m.hpow() - 1);
        acc.add(m, c.rotate(1));
    });
    return std::move(acc).finish();
}

} // namespace detail

// Moyal star product a * b = sum_j (1/j!) (hbar/2i)^j a P^j b with
// P = sum_p <d_xi_p d_x_p> - <d_x_p d_xi_p>, truncated at the context order.
inline WeylElement moyal(const WeylElement &a, const WeylElement &b)
{
    require_same(a.context(), b.context());
    TermAccumulator acc(a.context());
    detail::star_terms(a, b, a.context().trunc(), detail::StarMode::Full,
                       [&](const Monomial &m, const GaussianRational &c) { acc.add(m, c); });
    return std::move(acc).finish();
}

// [a, b] = a * b - b * a
inline WeylElement commutator(const WeylElement &a, const WeylElement &b)
{
    require_same(a.context(), b.context());
    TermAccumulator acc(a.context());
    detail::star_terms(a, b, a.context().trunc(), detail::StarMode::OddTwice,
                       [&](const Monomial &m, const GaussianRational &c) { acc.add(m, c); });
    return std::move(acc).finish();
}

// (i/hbar)[a, b]. The commutator is formed two grades deeper than the
// context so that every result term of grade <= N is exact.
inline WeylElement scaled_bracket(const WeylElement &a, const WeylElement &b)
{
    require_same(a.context(), b.context());
    return detail::scaled_bracket_into(a, b, a.context());
}

// {a, b} = sum_p d_xi_p a * d_x_p b - d_x_p a * d_xi_p b.
// Computed from partial derivatives, independently of the Moyal expansion.
inline WeylElement poisson(const WeylElement &a, const WeylElement &b)
{
    require_same(a.context(), b.context());
    const Context &ctx = a.context();
    WeylElement r(ctx);
    for (int p = 0; p < ctx.dim(); ++p) {
        r += cmul(partial(a, ctx.xi(p)), partial(b, ctx.x(p)));
        r -= cmul(partial(a, ctx.x(p)), partial(b, ctx.xi(p)));
    }
    return r;
}

} // namespace weyl
