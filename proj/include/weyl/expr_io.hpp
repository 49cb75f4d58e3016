#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "weyl/element.hpp"

namespace weyl
{

// Surface syntax for Weyl elements (products are commutative; the star
// product is never written inside an expression):
//
//   sum     := unary { ("+" | "-") unary }
//   unary   := ("-" | "+") unary | product
//   product := power { "*" power }
//   power   := atom [ "^" INTEGER ]
//   atom    := NUMBER | "i" | "h" | "x" INDEX | "p" INDEX | "(" sum ")"
//   NUMBER  := INTEGER [ "/" INTEGER ]
//
// h is hbar, x1..xd are the positions and p1..pd the momenta xi_1..xi_d.
inline constexpr long kMaxExponent = 1000;

namespace detail
{

class ExprParser
{
public:
    ExprParser(std::string_view text, Context ctx) : s_(text), ctx_(ctx) {}

    WeylElement parse()
    {
        WeylElement r = sum();
        skip_ws();
        if (pos_ != s_.size()) {
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        }
        return r;
    }

private:
    [[noreturn]] void fail(const std::string &msg) const { fail_at(msg, pos_); }

    [[noreturn]] void fail_at(const std::string &msg, std::size_t at) const
    {
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t k = 0; k < at && k < s_.size(); ++k) {
            if (s_[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(msg, line, col);
    }

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }

    bool peek(char c)
    {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool digit_at(std::size_t k) const { return k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k])); }

    std::string digits()
    {
        const std::size_t start = pos_;
        while (digit_at(pos_)) {
            ++pos_;
        }
        return std::string(s_.substr(start, pos_ - start));
    }

    WeylElement sum()
    {
        WeylElement r = unary();
        while (true) {
            if (peek('+')) {
                ++pos_;
                r += unary();
            } else if (peek('-')) {
                ++pos_;
                r -= unary();
            } else {
                return r;
            }
        }
    }

    WeylElement unary()
    {
        if (peek('-')) {
            ++pos_;
            return -unary();
        }
        if (peek('+')) {
            ++pos_;
            return unary();
        }
        return product();
    }

    WeylElement product()
    {
        WeylElement r = power();
        while (peek('*')) {
            ++pos_;
            r = cmul(r, power());
        }
        return r;
    }

    WeylElement power()
    {
        WeylElement base = atom();
        if (!peek('^')) {
            return base;
        }
        ++pos_;
        skip_ws();
        const std::size_t at = pos_;
        if (!digit_at(pos_)) {
            fail("expected a nonnegative integer exponent");
        }
        const std::string e = digits();
        if (e.size() > 6 || std::stol(e) > kMaxExponent) {
            fail_at("exponent overflow (limit " + std::to_string(kMaxExponent) + ")", at);
        }
        long n = std::stol(e);
        WeylElement r = WeylElement::constant(ctx_, 1);
        // square-and-multiply; truncation keeps every factor bounded
        WeylElement b = base;
        while (n > 0) {
            if (n & 1) {
                r = cmul(r, b);
            }
            n >>= 1;
            if (n > 0) {
                b = cmul(b, b);
            }
        }
        return r;
    }

    WeylElement atom()
    {
        skip_ws();
        if (pos_ >= s_.size()) {
            fail("unexpected end of input");
        }
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            WeylElement r = sum();
            if (!peek(')')) {
                fail("expected ')'");
            }
            ++pos_;
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rational q(digits(), 10);
            if (pos_ < s_.size() && s_[pos_] == '/') {
                const std::size_t slash = pos_;
                ++pos_;
                if (!digit_at(pos_)) {
                    fail("expected a denominator after '/'");
                }
                Integer den(digits(), 10);
                if (den == 0) {
                    fail_at("zero denominator", slash + 1);
                }
                q = Rational(q.get_num(), den);
                q.canonicalize();
            }
            return WeylElement::constant(ctx_, q);
        }
        if (c == 'i' && !ident_continues(pos_ + 1)) {
            ++pos_;
            return WeylElement::constant(ctx_, GaussianRational::i());
        }
        if (c == 'h' && !ident_continues(pos_ + 1)) {
            ++pos_;
            return WeylElement::hbar(ctx_);
        }
        if (c == 'x' || c == 'p') {
            const std::size_t at = pos_;
            ++pos_;
            if (!digit_at(pos_)) {
                fail_at("expected a variable index after '" + std::string(1, c) + "'", at);
            }
            const std::string idx = digits();
            if (ident_continues(pos_)) {
                fail_at("unknown identifier", at);
            }
            const long p = idx.size() > 3 ? 0 : std::stol(idx);
            if (p < 1 || p > ctx_.dim()) {
                fail_at("unknown variable " + std::string(1, c) + idx + " for dimension " + std::to_string(ctx_.dim()), at);
            }
            const int k = c == 'x' ? ctx_.x(static_cast<int>(p - 1)) : ctx_.xi(static_cast<int>(p - 1));
            return WeylElement::variable(ctx_, k);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            fail("unknown identifier");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    bool ident_continues(std::size_t k) const
    {
        return k < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[k])) || s_[k] == '_');
    }

    std::string_view s_;
    Context ctx_;
    std::size_t pos_ = 0;
};

inline std::string rational_body(const Rational &q, bool parenthesize)
{
    if (q.get_den() == 1) {
        return q.get_str();
    }
    return parenthesize ? "(" + q.get_str() + ")" : q.get_str();
}

} // namespace detail

// Exact element denoted by `text`, truncated at ctx's order.
inline WeylElement parse(std::string_view text, Context ctx) { return detail::ExprParser(text, ctx).parse(); }

// Scalar string of the form "a/b", "c/d*i" or "a/b+c/d*i".
inline GaussianRational parse_scalar(std::string_view text)
{
    const Context ctx(1, kMinTrunc);
    const WeylElement e = parse(text, ctx);
    if (e.size() > 1 || (e.size() == 1 && !e.terms().front().first.is_constant())) {
        throw ParseError("expected a scalar", 1, 1);
    }
    return e.is_zero() ? GaussianRational(0) : e.terms().front().second;
}

inline std::string monomial_string(const Monomial &m, const Context &ctx)
{
    std::string out;
    auto factor = [&](const std::string &name, int e) {
        if (e == 0) {
            return;
        }
        if (!out.empty()) {
            out += "*";
        }
        out += name;
        if (e > 1) {
            out += "^" + std::to_string(e);
        }
    };
    factor("h", m.hpow());
    for (int p = 0; p < ctx.dim(); ++p) {
        factor("x" + std::to_string(p + 1), m.exp(ctx.x(p)));
    }
    for (int p = 0; p < ctx.dim(); ++p) {
        factor("p" + std::to_string(p + 1), m.exp(ctx.xi(p)));
    }
    return out;
}

// Canonical text: terms in CanonicalLess order, unit coefficients
// suppressed, fractions parenthesized, e.g. "x1*p1 + (1/2)*i*h".
inline std::string print(const WeylElement &e)
{
    if (e.is_zero()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto &[m, c] : e.terms()) {
        const bool constant = m.is_constant();
        bool negative = false;
        std::string coeff;
        if (c.is_real()) {
            negative = sgn(c.re()) < 0;
            const Rational mag = abs(c.re());
            if (!(mag == 1 && !constant)) {
                coeff = detail::rational_body(mag, true);
            }
        } else if (sgn(c.re()) == 0) {
            negative = sgn(c.im()) < 0;
            const Rational mag = abs(c.im());
            coeff = mag == 1 ? "i" : detail::rational_body(mag, true) + "*i";
        } else {
            coeff = "(" + c.to_string() + ")";
        }
        std::string term = coeff;
        if (!constant) {
            term += (term.empty() ? "" : "*") + monomial_string(m, e.context());
        } else if (term.empty()) {
            term = "1";
        }
        if (first) {
            out += (negative ? "-" : "") + term;
            first = false;
        } else {
            out += (negative ? " - " : " + ") + term;
        }
    }
    return out;
}

} // namespace weyl
