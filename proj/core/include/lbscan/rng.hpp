#pragma once

#include <cassert>
#include <cstdint>
#include <random>

namespace lbscan {

using Rng = std::mt19937_64;

// std::uniform_*_distribution output is implementation-defined, so every
// stochastic component draws through these helpers to keep runs reproducible
// byte for byte.
inline double uniform_double(Rng& rng, double lo, double hi) {
    const double u = double(rng() >> 11) * 0x1.0p-53;  // [0, 1)
    return lo + u * (hi - lo);
}

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
    assert(n > 0);
    const double u = double(rng() >> 11) * 0x1.0p-53;
    std::size_t i = std::size_t(u * double(n));
    return i < n ? i : n - 1;
}

inline double normal_double(Rng& rng, double mean, double sigma) {
    // Box-Muller on the deterministic uniform; one value per call keeps the
    // draw count predictable.
    const double u1 = uniform_double(rng, 1e-300, 1.0);
    const double u2 = uniform_double(rng, 0.0, 1.0);
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sigma * r * std::cos(6.283185307179586 * u2);
}

}  // namespace lbscan
