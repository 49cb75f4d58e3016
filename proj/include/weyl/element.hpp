#pragma once

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "weyl/context.hpp"
#include "weyl/monomial.hpp"
#include "weyl/scalar.hpp"

namespace weyl
{

using Term = std::pair<Monomial, GaussianRational>;

// A finite sum of scalar * hbar^j z^alpha in W / X_{N+1}. Terms are kept
// sorted by CanonicalLess, without zero coefficients and without grades
// above the context's truncation order, so structural equality is
// mathematical equality.
class WeylElement
{
public:
    explicit WeylElement(Context ctx) : ctx_(ctx) {}

    // Takes arbitrary terms: merges duplicates, drops zeros and over-grade terms.
    WeylElement(Context ctx, std::vector<Term> terms) : ctx_(ctx), terms_(std::move(terms)) { normalize(); }

    static WeylElement constant(Context ctx, const GaussianRational &c)
    {
        return WeylElement(ctx, {{Monomial(ctx.nvars()), c}});
    }

    static WeylElement variable(Context ctx, int k, const GaussianRational &c = 1)
    {
        if (k < 0 || k >= ctx.nvars()) {
            throw PreconditionError("variable index out of range");
        }
        return WeylElement(ctx, {{Monomial::variable(ctx.nvars(), k), c}});
    }

    static WeylElement hbar(Context ctx, int power = 1)
    {
        Monomial m(ctx.nvars());
        m.set_hpow(power);
        return WeylElement(ctx, {{m, 1}});
    }

    static WeylElement monomial(Context ctx, const Monomial &m, const GaussianRational &c = 1)
    {
        return WeylElement(ctx, {{m, c}});
    }

    const Context &context() const noexcept { return ctx_; }
    const std::vector<Term> &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    GaussianRational coefficient(const Monomial &m) const
    {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [](const Term &t, const Monomial &key) { return CanonicalLess{}(t.first, key); });
        if (it != terms_.end() && it->first == m) {
            return it->second;
        }
        return 0;
    }

    WeylElement &operator+=(const WeylElement &o) { return *this = merge(*this, o, false); }
    WeylElement &operator-=(const WeylElement &o) { return *this = merge(*this, o, true); }

    friend WeylElement operator+(const WeylElement &a, const WeylElement &b) { return merge(a, b, false); }
    friend WeylElement operator-(const WeylElement &a, const WeylElement &b) { return merge(a, b, true); }
    friend WeylElement operator-(const WeylElement &a)
    {
        WeylElement r(a.ctx_);
        r.terms_.reserve(a.terms_.size());
        for (const auto &[m, c] : a.terms_) {
            r.terms_.emplace_back(m, -c);
        }
        return r;
    }
    friend WeylElement operator*(const GaussianRational &s, const WeylElement &a)
    {
        WeylElement r(a.ctx_);
        if (s.is_zero()) {
            return r;
        }
        r.terms_.reserve(a.terms_.size());
        for (const auto &[m, c] : a.terms_) {
            r.terms_.emplace_back(m, c * s);
        }
        return r;
    }

    friend bool operator==(const WeylElement &a, const WeylElement &b)
    {
        return a.ctx_ == b.ctx_ && a.terms_.size() == b.terms_.size() &&
               std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
                          [](const Term &x, const Term &y) { return x.first == y.first && x.second == y.second; });
    }

private:
    static WeylElement merge(const WeylElement &a, const WeylElement &b, bool subtract)
    {
        require_same(a.ctx_, b.ctx_);
        WeylElement r(a.ctx_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        CanonicalLess less;
        auto i = a.terms_.begin();
        auto j = b.terms_.begin();
        while (i != a.terms_.end() || j != b.terms_.end()) {
            if (j == b.terms_.end() || (i != a.terms_.end() && less(i->first, j->first))) {
                r.terms_.push_back(*i++);
            } else if (i == a.terms_.end() || less(j->first, i->first)) {
                r.terms_.emplace_back(j->first, subtract ? -j->second : j->second);
                ++j;
            } else {
                GaussianRational c = subtract ? i->second - j->second : i->second + j->second;
                if (!c.is_zero()) {
                    r.terms_.emplace_back(i->first, std::move(c));
                }
                ++i;
                ++j;
            }
        }
        return r;
    }

    void normalize()
    {
        const int n = ctx_.trunc();
        std::erase_if(terms_, [n](const Term &t) { return t.first.grade() > n || t.second.is_zero(); });
        std::sort(terms_.begin(), terms_.end(), [](const Term &x, const Term &y) { return CanonicalLess{}(x.first, y.first); });
        std::vector<Term> merged;
        merged.reserve(terms_.size());
        for (auto &t : terms_) {
            if (!merged.empty() && merged.back().first == t.first) {
                merged.back().second += t.second;
            } else {
                if (!merged.empty() && merged.back().second.is_zero()) {
                    merged.pop_back();
                }
                merged.push_back(std::move(t));
            }
        }
        if (!merged.empty() && merged.back().second.is_zero()) {
            merged.pop_back();
        }
        terms_ = std::move(merged);
    }

    Context ctx_;
    std::vector<Term> terms_;
};

// Hash-based accumulator for building an element term by term.
class TermAccumulator
{
public:
    explicit TermAccumulator(Context ctx) : ctx_(ctx) {}

    void add(const Monomial &m, const GaussianRational &c)
    {
        if (m.grade() > ctx_.trunc() || c.is_zero()) {
            return;
        }
        auto [it, inserted] = map_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
        }
    }

    void add(const WeylElement &a, const GaussianRational &scale = 1)
    {
        for (const auto &[m, c] : a.terms()) {
            add(m, scale.is_one() ? c : c * scale);
        }
    }

    WeylElement finish() &&
    {
        std::vector<Term> terms;
        terms.reserve(map_.size());
        for (auto &[m, c] : map_) {
            if (!c.is_zero()) {
                terms.emplace_back(m, std::move(c));
            }
        }
        map_.clear();
        return WeylElement(ctx_, std::move(terms));
    }

private:
    Context ctx_;
    std::unordered_map<Monomial, GaussianRational, MonomialHash> map_;
};

inline WeylElement add(const WeylElement &a, const WeylElement &b) { return a + b; }

inline WeylElement scale(const GaussianRational &c, const WeylElement &a) { return c * a; }

// Commutative (pointwise) product, truncated at the context order.
inline WeylElement cmul(const WeylElement &a, const WeylElement &b)
{
    require_same(a.context(), b.context());
    const int n = a.context().trunc();
    TermAccumulator acc(a.context());
    for (const auto &[ma, ca] : a.terms()) {
        const int ga = ma.grade();
        for (const auto &[mb, cb] : b.terms()) {
            if (ga + mb.grade() <= n) {
                acc.add(ma * mb, ca * cb);
            }
        }
    }
    return std::move(acc).finish();
}

// Homogeneous component of grade n.
inline WeylElement project(const WeylElement &a, int n)
{
    std::vector<Term> out;
    for (const auto &t : a.terms()) {
        if (t.first.grade() == n) {
            out.push_back(t);
        }
    }
    return WeylElement(a.context(), std::move(out));
}

// Components of grade in [lo, hi].
inline WeylElement project_range(const WeylElement &a, int lo, int hi)
{
    std::vector<Term> out;
    for (const auto &t : a.terms()) {
        const int g = t.first.grade();
        if (g >= lo && g <= hi) {
            out.push_back(t);
        }
    }
    return WeylElement(a.context(), std::move(out));
}

// Minimum grade among the terms; nullopt for the zero element.
inline std::optional<int> lowest_grade(const WeylElement &a)
{
    if (a.is_zero()) {
        return std::nullopt;
    }
    return a.terms().front().first.grade();
}

inline std::optional<int> highest_grade(const WeylElement &a)
{
    if (a.is_zero()) {
        return std::nullopt;
    }
    return a.terms().back().first.grade();
}

// a lies in X_n (zero is in every X_n).
inline bool in_filtration(const WeylElement &a, int n)
{
    auto g = lowest_grade(a);
    return !g || *g >= n;
}

// Exact partial derivative with respect to z_k (0-based, x's first).
inline WeylElement partial(const WeylElement &a, int k)
{
    if (k < 0 || k >= a.context().nvars()) {
        throw PreconditionError("partial: variable index " + std::to_string(k) + " out of range");
    }
    std::vector<Term> out;
    for (const auto &[m, c] : a.terms()) {
        const int e = m.exp(k);
        if (e == 0) {
            continue;
        }
        Monomial d = m;
        d.set_exp(k, e - 1);
        out.emplace_back(d, c * GaussianRational(e));
    }
    return WeylElement(a.context(), std::move(out));
}

// Same terms reinterpreted in another truncation order of the same dimension.
inline WeylElement retruncate(const WeylElement &a, Context target)
{
    require_same_dim(a.context(), target);
    return WeylElement(target, a.terms());
}

} // namespace weyl
