#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <functional>
#include <span>

#include "weyl/context.hpp"

namespace weyl
{

// hbar^j z^alpha over at most 2*kMaxDim variables. Exponents are bounded by
// the truncation order, so a byte per slot is enough.
class Monomial
{
public:
    static constexpr std::size_t kSlots = 2 * kMaxDim;

    Monomial() = default;
    explicit Monomial(int nvars) : nvars_(static_cast<std::uint8_t>(nvars)) {}
    Monomial(int hpow, std::span<const int> exps) : hpow_(static_cast<std::uint8_t>(hpow)), nvars_(static_cast<std::uint8_t>(exps.size()))
    {
        for (std::size_t k = 0; k < exps.size(); ++k) {
            exps_[k] = static_cast<std::uint8_t>(exps[k]);
        }
    }

    static Monomial variable(int nvars, int k)
    {
        Monomial m(nvars);
        m.exps_[static_cast<std::size_t>(k)] = 1;
        return m;
    }

    int nvars() const noexcept { return nvars_; }
    int hpow() const noexcept { return hpow_; }
    int exp(int k) const noexcept { return exps_[static_cast<std::size_t>(k)]; }

    void set_hpow(int j) noexcept { hpow_ = static_cast<std::uint8_t>(j); }
    void set_exp(int k, int e) noexcept { exps_[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(e); }

    // |alpha|
    int degree() const noexcept
    {
        int s = 0;
        for (int k = 0; k < nvars_; ++k) {
            s += exps_[static_cast<std::size_t>(k)];
        }
        return s;
    }

    int grade() const noexcept { return 2 * hpow_ + degree(); }

    bool is_constant() const noexcept { return hpow_ == 0 && degree() == 0; }

    // Commutative product; callers check the grade budget first.
    friend Monomial operator*(const Monomial &a, const Monomial &b) noexcept
    {
        Monomial r(a.nvars_);
        r.hpow_ = static_cast<std::uint8_t>(a.hpow_ + b.hpow_);
        for (int k = 0; k < a.nvars_; ++k) {
            r.exps_[static_cast<std::size_t>(k)] =
                static_cast<std::uint8_t>(a.exps_[static_cast<std::size_t>(k)] + b.exps_[static_cast<std::size_t>(k)]);
        }
        return r;
    }

    friend bool operator==(const Monomial &a, const Monomial &b) noexcept
    {
        return a.hpow_ == b.hpow_ && a.nvars_ == b.nvars_ && a.exps_ == b.exps_;
    }

    std::size_t hash() const noexcept
    {
        std::uint64_t w[2];
        std::memcpy(w, exps_.data(), sizeof(w));
        std::uint64_t h = 0x9e3779b97f4a7c15ull * (hpow_ + 1);
        h ^= w[0] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= w[1] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }

private:
    std::uint8_t hpow_ = 0;
    std::uint8_t nvars_ = 0;
    std::array<std::uint8_t, kSlots> exps_{};

    static_assert(sizeof(std::array<std::uint8_t, kSlots>) == 2 * sizeof(std::uint64_t));
};

// Canonical term order: grade, then hbar power, then exponent vectors in
// descending lexicographic order (x1^2 before x1*p1 before p1^2).
struct CanonicalLess {
    bool operator()(const Monomial &a, const Monomial &b) const noexcept
    {
        const int ga = a.grade();
        const int gb = b.grade();
        if (ga != gb) {
            return ga < gb;
        }
        if (a.hpow() != b.hpow()) {
            return a.hpow() < b.hpow();
        }
        for (int k = 0; k < a.nvars(); ++k) {
            if (a.exp(k) != b.exp(k)) {
                return a.exp(k) > b.exp(k);
            }
        }
        return false;
    }
};

struct MonomialHash {
    std::size_t operator()(const Monomial &m) const noexcept { return m.hash(); }
};

inline int grade(const Monomial &m) noexcept { return m.grade(); }

} // namespace weyl
