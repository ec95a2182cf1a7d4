#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "parsets/grid.hpp"

namespace parsets {

namespace detail {

// splitmix64 finalizer: a counter-based stream, so any sample is addressable
// without sequencing state.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline double uniform01(std::uint64_t bits) {
    // (0,1]: never zero, so log() below is safe
    return (static_cast<double>(bits >> 11) + 1.0) * 0x1p-53;
}

// standard normal via Box-Muller on two counter draws
inline double gauss(std::uint64_t stream, std::uint64_t counter) {
    const double u1 = uniform01(mix64(stream ^ (0xA0761D6478BD642FULL * counter)));
    const double u2 = uniform01(mix64(stream ^ (0xE7037ED1A0B428DBULL * counter) ^
                                      0x8EBC6AF09C88C6E3ULL));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace detail

// Sampled Brownian trajectory started at the origin; increments have variance
// t / n_steps per coordinate. Fixed seeds give bit-identical paths.
struct BrownianPath {
    int dim = 3;
    double t = 1.0;
    int n_steps = 0;
    std::uint64_t seed = 0;
    std::vector<Vec3> points;
};

inline BrownianPath brownian_path(int dim, double t, int n_steps, std::uint64_t seed) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("brownian_path: dim must be 2 or 3");
    if (n_steps < 1) throw std::invalid_argument("brownian_path: n_steps must be >= 1");
    if (!(t > 0.0)) throw std::invalid_argument("brownian_path: t must be > 0");
    BrownianPath path;
    path.dim = dim;
    path.t = t;
    path.n_steps = n_steps;
    path.seed = seed;
    path.points.resize(static_cast<std::size_t>(n_steps) + 1);
    path.points[0] = {0.0, 0.0, 0.0};
    const double sigma = std::sqrt(t / n_steps);
    const std::uint64_t stream = detail::mix64(seed);
    Vec3 p{0.0, 0.0, 0.0};
    for (int k = 1; k <= n_steps; ++k) {
        for (int c = 0; c < dim; ++c) {
            const std::uint64_t counter =
                static_cast<std::uint64_t>(k) * 4u + static_cast<std::uint64_t>(c);
            p[c] += sigma * detail::gauss(stream, counter);
        }
        path.points[k] = p;
    }
    return path;
}

} // namespace parsets
