#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "schubert/matrix.hpp"

namespace schubert {

// Seeded stream built on std::mt19937_64, whose output sequence is fixed by
// the C++ standard. Distributions are derived by hand rather than through
// <random> distributions, which are implementation-defined:
//   uniform()  top 53 bits of one draw, scaled into [0, 1)
//   normal()   Box-Muller cosine branch, two uniforms per value
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Standard complex Gaussian, E|z|^2 = 1.
    cplx complex_normal() {
        const double re = normal();
        const double im = normal();
        return cplx(re, im) / std::numbers::sqrt2;
    }

    std::size_t below(std::size_t k) { return static_cast<std::size_t>(uniform() * static_cast<double>(k)); }

    // Derive an independent child seed; keeps sub-streams stable when callers
    // add draws elsewhere.
    std::uint64_t fork() {
        std::uint64_t z = eng_() + 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 eng_;
};

} // namespace schubert
