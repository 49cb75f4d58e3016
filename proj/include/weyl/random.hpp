#pragma once

#include <cstdint>
#include <vector>

#include "weyl/element.hpp"
#include "weyl/rng.hpp"

namespace weyl
{

struct RandomTermOptions {
    int min_grade = 0;
    int max_grade = 6;
    int max_terms = 6;
    bool complex = true;
    // keep at least one z in every monomial (generators of inner automorphisms)
    bool require_z = false;
};

// Monomial of exactly grade g, hbar power and exponents drawn at random.
inline Monomial random_monomial(Rng &rng, const Context &ctx, int g, bool require_z)
{
    const int jmax = require_z ? (g - 1) / 2 : g / 2;
    const int j = jmax > 0 ? rng.range(0, jmax) : 0;
    Monomial m(ctx.nvars());
    m.set_hpow(j);
    for (int left = g - 2 * j; left > 0; --left) {
        const int k = rng.below(ctx.nvars());
        m.set_exp(k, m.exp(k) + 1);
    }
    return m;
}

inline GaussianRational random_coefficient(Rng &rng, bool complex)
{
    const int den = rng.range(1, 4);
    GaussianRational c = GaussianRational::fraction(rng.range(-5, 5), den);
    if (complex && rng.below(3) == 0) {
        c += GaussianRational::fraction(rng.range(-3, 3), rng.range(1, 3)) * GaussianRational::i();
    }
    if (c.is_zero()) {
        c = 1;
    }
    return c;
}

inline WeylElement random_element(Rng &rng, const Context &ctx, const RandomTermOptions &opt)
{
    const int hi = std::min(opt.max_grade, ctx.trunc());
    std::vector<Term> terms;
    const int n = opt.max_terms > 0 ? rng.range(1, opt.max_terms) : 0;
    for (int t = 0; t < n; ++t) {
        const int g = rng.range(opt.min_grade, hi);
        if (opt.require_z && g == 0) {
            continue;
        }
        terms.emplace_back(random_monomial(rng, ctx, g, opt.require_z), random_coefficient(rng, opt.complex));
    }
    return WeylElement(ctx, std::move(terms));
}

// Generator S for an inner automorphism at truncation order N: grades
// 3..N+1, no z-free terms, at most `terms` terms. Lives in order N+1.
inline WeylElement random_generator(Rng &rng, const Context &ctx, int terms, bool complex = false)
{
    const Context out = ctx.with_trunc(ctx.trunc() + 1);
    std::vector<Term> t;
    for (int k = 0; k < terms; ++k) {
        const int g = rng.range(3, out.trunc());
        t.emplace_back(random_monomial(rng, out, g, true), random_coefficient(rng, complex));
    }
    return WeylElement(out, std::move(t));
}

} // namespace weyl
