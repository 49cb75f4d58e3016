#pragma once

#include <string>

#include "weyl/errors.hpp"

namespace weyl
{

inline constexpr int kMaxDim = 8;
inline constexpr int kMinTrunc = 4;
inline constexpr int kMaxTrunc = 240;

// Fixes the number of degrees of freedom d (variables x_1..x_d, xi_1..xi_d)
// and the truncation order N: every element lives in W / X_{N+1}.
class Context
{
public:
    Context(int dim, int trunc) : dim_(dim), trunc_(trunc)
    {
        if (dim < 1 || dim > kMaxDim) {
            throw ContextError("dimension must be in [1, " + std::to_string(kMaxDim) + "], got " + std::to_string(dim));
        }
        if (trunc < kMinTrunc || trunc > kMaxTrunc) {
            throw ContextError("truncation order must be in [" + std::to_string(kMinTrunc) + ", " +
                               std::to_string(kMaxTrunc) + "], got " + std::to_string(trunc));
        }
    }

    int dim() const noexcept { return dim_; }
    int trunc() const noexcept { return trunc_; }
    int nvars() const noexcept { return 2 * dim_; }

    // Variable indices follow z = (x_1..x_d, xi_1..xi_d), 0-based.
    int x(int p) const noexcept { return p; }
    int xi(int p) const noexcept { return dim_ + p; }
    bool is_position(int k) const noexcept { return k < dim_; }
    // The variable paired with k by the Poisson bracket.
    int partner(int k) const noexcept { return k < dim_ ? k + dim_ : k - dim_; }

    Context with_trunc(int trunc) const { return Context(dim_, trunc); }

    friend bool operator==(const Context &, const Context &) = default;

    std::string to_string() const { return "(dim=" + std::to_string(dim_) + ", trunc=" + std::to_string(trunc_) + ")"; }

private:
    int dim_;
    int trunc_;
};

inline void require_same(const Context &a, const Context &b)
{
    if (!(a == b)) {
        throw ContextError("context mismatch: " + a.to_string() + " vs " + b.to_string());
    }
}

inline void require_same_dim(const Context &a, const Context &b)
{
    if (a.dim() != b.dim()) {
        throw ContextError("dimension mismatch: " + a.to_string() + " vs " + b.to_string());
    }
}

} // namespace weyl
