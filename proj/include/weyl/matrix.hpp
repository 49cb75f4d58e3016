#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "weyl/errors.hpp"
#include "weyl/scalar.hpp"

namespace weyl
{

// Dense square matrix over the Gaussian rationals, row-major.
class Matrix
{
public:
    Matrix() = default;
    explicit Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n * n)) {}
    Matrix(int n, std::vector<GaussianRational> entries) : n_(n), a_(std::move(entries))
    {
        if (a_.size() != static_cast<std::size_t>(n * n)) {
            throw PreconditionError("matrix entry count does not match its size");
        }
    }

    static Matrix identity(int n)
    {
        Matrix m(n);
        for (int i = 0; i < n; ++i) {
            m(i, i) = 1;
        }
        return m;
    }

    int size() const noexcept { return n_; }
    const std::vector<GaussianRational> &entries() const noexcept { return a_; }

    GaussianRational &operator()(int r, int c) { return a_[static_cast<std::size_t>(r * n_ + c)]; }
    const GaussianRational &operator()(int r, int c) const { return a_[static_cast<std::size_t>(r * n_ + c)]; }

    Matrix transpose() const
    {
        Matrix t(n_);
        for (int r = 0; r < n_; ++r) {
            for (int c = 0; c < n_; ++c) {
                t(c, r) = (*this)(r, c);
            }
        }
        return t;
    }

    friend Matrix operator*(const Matrix &x, const Matrix &y)
    {
        if (x.n_ != y.n_) {
            throw PreconditionError("matrix size mismatch");
        }
        Matrix r(x.n_);
        for (int i = 0; i < x.n_; ++i) {
            for (int k = 0; k < x.n_; ++k) {
                if (x(i, k).is_zero()) {
                    continue;
                }
                for (int j = 0; j < x.n_; ++j) {
                    r(i, j) += x(i, k) * y(k, j);
                }
            }
        }
        return r;
    }

    friend Matrix operator*(const GaussianRational &s, Matrix m)
    {
        for (auto &e : m.a_) {
            e *= s;
        }
        return m;
    }

    friend bool operator==(const Matrix &x, const Matrix &y) { return x.n_ == y.n_ && x.a_ == y.a_; }

    bool is_identity() const { return *this == identity(n_); }

    // Gauss-Jordan elimination; throws SingularMatrixError.
    Matrix inverse() const
    {
        Matrix a = *this;
        Matrix inv = identity(n_);
        for (int col = 0; col < n_; ++col) {
            int pivot = col;
            while (pivot < n_ && a(pivot, col).is_zero()) {
                ++pivot;
            }
            if (pivot == n_) {
                throw SingularMatrixError("matrix is singular");
            }
            if (pivot != col) {
                for (int c = 0; c < n_; ++c) {
                    std::swap(a(pivot, c), a(col, c));
                    std::swap(inv(pivot, c), inv(col, c));
                }
            }
            const GaussianRational p = a(col, col);
            for (int c = 0; c < n_; ++c) {
                a(col, c) /= p;
                inv(col, c) /= p;
            }
            for (int r = 0; r < n_; ++r) {
                if (r == col || a(r, col).is_zero()) {
                    continue;
                }
                const GaussianRational f = a(r, col);
                for (int c = 0; c < n_; ++c) {
                    a(r, c) -= f * a(col, c);
                    inv(r, c) -= f * inv(col, c);
                }
            }
        }
        return inv;
    }

    bool is_invertible() const
    {
        try {
            (void)inverse();
            return true;
        } catch (const SingularMatrixError &) {
            return false;
        }
    }

private:
    int n_ = 0;
    std::vector<GaussianRational> a_;
};

} // namespace weyl
