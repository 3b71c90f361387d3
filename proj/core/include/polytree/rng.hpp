#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace polytree {

/// Seedable random source built on std::mt19937_64 with explicit inverse-CDF /
/// Box-Muller transforms, so the draw sequence depends only on the seed and
/// not on implementation-defined distribution adapters.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform over {0, ..., n-1}, rejection sampled to avoid modulo bias.
    int uniform_int(int n) {
        const auto bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return static_cast<int>(x % bound);
    }

    bool coin() { return (next_u64() & 1u) != 0; }

    /// Standard normal via Box-Muller (two uniforms per draw, no cached spare).
    double normal() {
        double u1 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    /// Laplace(0,1) via inverse CDF.
    double laplace() {
        double u = uniform01();
        while (u == 0.0) u = uniform01();
        const double v = u - 0.5;
        return v >= 0.0 ? -std::log(1.0 - 2.0 * v) : std::log(1.0 + 2.0 * v);
    }

private:
    std::mt19937_64 gen_;
};

/// Stateless 64-bit mixer used to derive per-trial seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace polytree
