#pragma once

#include <string>

#include "weyl/weyl.hpp"

namespace weyl::test
{

inline WeylElement E(const std::string &s, const Context &ctx) { return parse(s, ctx); }

inline SympMatrix matrix(int dim, std::initializer_list<long> entries)
{
    std::vector<GaussianRational> e;
    for (long v : entries) {
        e.emplace_back(v);
    }
    return SympMatrix(dim, Matrix(2 * dim, std::move(e)));
}

inline AutomorphismData automorphism(const Context &ctx, std::initializer_list<const char *> images,
                                     GaussianRational c = 1)
{
    std::vector<WeylElement> g;
    for (const char *s : images) {
        g.push_back(parse(s, ctx));
    }
    return AutomorphismData(ctx, std::move(g), std::move(c));
}

inline bool homogeneous(const WeylElement &a, int grade)
{
    for (const auto &[m, c] : a.terms()) {
        if (m.grade() != grade) {
            return false;
        }
    }
    return true;
}

} // namespace weyl::test
