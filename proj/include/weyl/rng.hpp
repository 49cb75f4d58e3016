#pragma once

#include <cstdint>
#include <random>

namespace weyl
{

// Deterministic generator for test instances. The standard distributions
// are implementation-defined, so draws are reduced by hand to keep
// instances byte-identical across toolchains.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // uniform-ish integer in [0, n)
    int below(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }

    // integer in [lo, hi]
    int range(int lo, int hi) { return lo + below(hi - lo + 1); }

    bool coin() { return (eng_() >> 63) != 0; }

private:
    std::mt19937_64 eng_;
};

} // namespace weyl
