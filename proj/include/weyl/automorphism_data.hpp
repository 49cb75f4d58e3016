#pragma once

#include <utility>
#include <vector>

#include "weyl/element.hpp"

namespace weyl
{

// An automorphism of W / X_{N+1} given by the images G_k of the generators
// z_k and the factor c in hbar -> c*hbar. Gradedness (every G_k in X_1) is
// a checked property rather than a construction invariant so that invalid
// inputs can be loaded and diagnosed.
class AutomorphismData
{
public:
    AutomorphismData(Context ctx, std::vector<WeylElement> images, GaussianRational hbar_scale = 1)
        : ctx_(ctx), images_(std::move(images)), hbar_scale_(std::move(hbar_scale))
    {
        if (images_.size() != static_cast<std::size_t>(ctx_.nvars())) {
            throw PreconditionError("automorphism needs exactly 2d generator images");
        }
        for (const auto &g : images_) {
            require_same(ctx_, g.context());
        }
        if (hbar_scale_.is_zero()) {
            throw PreconditionError("hbar scale must be nonzero");
        }
    }

    static AutomorphismData identity(Context ctx)
    {
        std::vector<WeylElement> images;
        for (int k = 0; k < ctx.nvars(); ++k) {
            images.push_back(WeylElement::variable(ctx, k));
        }
        return AutomorphismData(ctx, std::move(images));
    }

    const Context &context() const noexcept { return ctx_; }
    const std::vector<WeylElement> &images() const noexcept { return images_; }
    const WeylElement &image(int k) const { return images_.at(static_cast<std::size_t>(k)); }
    const GaussianRational &hbar_scale() const noexcept { return hbar_scale_; }

    // Phi(W_1) in X_1, which makes Phi(W_n) land in X_n.
    bool is_graded() const
    {
        for (const auto &g : images_) {
            if (!in_filtration(g, 1)) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const AutomorphismData &, const AutomorphismData &) = default;

private:
    Context ctx_;
    std::vector<WeylElement> images_;
    GaussianRational hbar_scale_;
};

// A derivation of W / X_{N+1} annihilating hbar, given by the images of
// the generators.
class DerivationData
{
public:
    DerivationData(Context ctx, std::vector<WeylElement> images) : ctx_(ctx), images_(std::move(images))
    {
        if (images_.size() != static_cast<std::size_t>(ctx_.nvars())) {
            throw PreconditionError("derivation needs exactly 2d generator images");
        }
        for (const auto &g : images_) {
            require_same(ctx_, g.context());
        }
    }

    static DerivationData zero(Context ctx)
    {
        return DerivationData(ctx, std::vector<WeylElement>(static_cast<std::size_t>(ctx.nvars()), WeylElement(ctx)));
    }

    const Context &context() const noexcept { return ctx_; }
    const std::vector<WeylElement> &images() const noexcept { return images_; }
    const WeylElement &image(int k) const { return images_.at(static_cast<std::size_t>(k)); }

    // D(W_1) in X_n.
    bool raises_to(int n) const
    {
        for (const auto &g : images_) {
            if (!in_filtration(g, n)) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const DerivationData &, const DerivationData &) = default;

private:
    Context ctx_;
    std::vector<WeylElement> images_;
};

} // namespace weyl
