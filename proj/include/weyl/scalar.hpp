#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "weyl/errors.hpp"

namespace weyl
{

using Rational = mpq_class;
using Integer = mpz_class;

// Exact complex number re + im*i with rational parts. gmpxx keeps both
// fractions canonical (positive denominators, coprime terms).
class GaussianRational
{
public:
    GaussianRational() = default;
    GaussianRational(long v) : re_(v) {}
    GaussianRational(Rational re) : re_(std::move(re)) {}
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    // Canonical p/q construction; q must be nonzero.
    static GaussianRational fraction(long p, long q)
    {
        if (q == 0) {
            throw PreconditionError("zero denominator");
        }
        Rational r(p, q);
        r.canonicalize();
        return r;
    }

    const Rational &re() const noexcept { return re_; }
    const Rational &im() const noexcept { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return sgn(im_) == 0 && re_ == 1; }

    GaussianRational conj() const { return {re_, -im_}; }

    // Multiplication by i^k without touching the magnitudes.
    GaussianRational rotate(unsigned k) const
    {
        switch (k % 4) {
            case 0:
                return *this;
            case 1:
                return {-im_, re_};
            case 2:
                return {-re_, -im_};
            default:
                return {im_, -re_};
        }
    }

    GaussianRational &operator+=(const GaussianRational &o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational &operator-=(const GaussianRational &o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational &operator*=(const GaussianRational &o)
    {
        if (sgn(im_) == 0 && sgn(o.im_) == 0) {
            re_ *= o.re_;
            return *this;
        }
        Rational re = re_ * o.re_ - im_ * o.im_;
        Rational im = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }
    GaussianRational &operator*=(const Rational &r)
    {
        re_ *= r;
        if (sgn(im_) != 0) {
            im_ *= r;
        }
        return *this;
    }
    GaussianRational &operator/=(const GaussianRational &o)
    {
        if (o.is_zero()) {
            throw PreconditionError("division by zero");
        }
        Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
        *this *= o.conj();
        re_ /= norm;
        im_ /= norm;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational &b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational &b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational &b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational &b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational &a) { return {-a.re_, -a.im_}; }

    friend bool operator==(const GaussianRational &a, const GaussianRational &b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    // "a/b", "c/d*i" or "a/b+c/d*i"; integers print without denominator and
    // a unit imaginary part prints as a bare "i".
    std::string to_string() const
    {
        auto rat = [](const Rational &q) { return q.get_str(); };
        if (sgn(im_) == 0) {
            return rat(re_);
        }
        std::string imag;
        Rational mag = abs(im_);
        imag = (mag == 1) ? "i" : rat(mag) + "*i";
        if (sgn(re_) == 0) {
            return (sgn(im_) < 0 ? "-" : "") + imag;
        }
        return rat(re_) + (sgn(im_) < 0 ? "-" : "+") + imag;
    }

    friend std::ostream &operator<<(std::ostream &os, const GaussianRational &z) { return os << z.to_string(); }

private:
    Rational re_{0};
    Rational im_{0};
};

} // namespace weyl
