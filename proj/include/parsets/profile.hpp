#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "parsets/edt.hpp"
#include "parsets/isosurface.hpp"

namespace parsets {

enum class ProfileSource { grid, analytic, simulation };

inline const char* to_string(ProfileSource s) {
    switch (s) {
        case ProfileSource::grid: return "grid";
        case ProfileSource::analytic: return "analytic";
        default: return "simulation";
    }
}

// Sampled map r -> (V(r), S(r)); the central exchange format. surface holds
// the level-set estimate, surface_deriv the finite-difference consistency
// witness (equal to surface for analytic sources).
struct RadialProfile {
    std::vector<double> radii;
    std::vector<double> volume;
    std::vector<double> surface;
    std::vector<double> surface_deriv;
    double v0 = 0.0;
    int dim = 2;
    ProfileSource source = ProfileSource::grid;
    double grid_h = 0.0; // 0 for analytic profiles

    std::size_t size() const { return radii.size(); }
};

inline void validate(const RadialProfile& p) {
    if (p.radii.empty()) throw std::invalid_argument("profile: empty");
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (!(p.radii[k] > 0.0)) throw std::invalid_argument("profile: radii must be positive");
        if (k > 0 && !(p.radii[k] > p.radii[k - 1]))
            throw std::invalid_argument("profile: radii must be strictly increasing");
        if (k > 0 && p.volume[k] < p.volume[k - 1] * (1.0 - 1e-12))
            throw std::invalid_argument("profile: volume must be nondecreasing");
        if (p.surface[k] < 0.0) throw std::invalid_argument("profile: surface must be >= 0");
    }
}

// Geometric schedule r_min * 2^(k/per_octave) with the endpoint included.
inline std::vector<double> geometric_radii(double r_min, double r_max, int per_octave) {
    if (!(r_min > 0.0) || !(r_max > r_min))
        throw std::invalid_argument("geometric_radii: need 0 < r_min < r_max");
    if (per_octave < 1)
        throw std::invalid_argument("geometric_radii: per_octave must be >= 1");
    std::vector<double> out;
    double r = r_min;
    for (int k = 0; r < r_max * (1.0 - 1e-12); ++k) {
        out.push_back(r);
        r = r_min * std::pow(2.0, (k + 1.0) / per_octave);
    }
    out.push_back(r_max);
    return out;
}

inline double volume_at(const DistanceField& field, double r) {
    if (r < 0.0) throw std::invalid_argument("volume_at: r must be >= 0");
    const double h = field.grid.h();
    const double thr = (r / h) * (r / h) * (1.0 + 2e-12);
    std::size_t cnt = 0;
    for (const std::int64_t s : field.sq)
        if (static_cast<double>(s) <= thr) ++cnt;
    return std::pow(h, field.grid.dim) * static_cast<double>(cnt);
}

enum class SurfaceMethod { level_set, derivative };

namespace detail {

inline void require_resolvable(const DistanceField& field, double r) {
    const double h = field.grid.h();
    if (r < 2.0 * h * (1.0 - 1e-9)) {
        throw std::invalid_argument(
            "surface estimate requested at r = " + std::to_string(r) +
            " below the resolvable floor 2h = " + std::to_string(2.0 * h));
    }
}

inline std::vector<double> materialize_dist(const DistanceField& field) {
    std::vector<double> d(field.sq.size());
    const double h = field.grid.h();
    parallel_for(d.size(), [&](std::size_t i) {
        d[i] = h * std::sqrt(static_cast<double>(field.sq[i]));
    });
    return d;
}

inline std::vector<double> level_set_areas(const DistanceField& field,
                                           const std::vector<double>& dist,
                                           const std::vector<double>& radii) {
    // ties at a lattice vertex are broken by a deterministic level bump
    const double eps = 1e-12 * field.grid.h();
    std::vector<double> levels(radii.size());
    for (std::size_t k = 0; k < radii.size(); ++k) levels[k] = radii[k] + eps;
    if (field.grid.dim == 2)
        return contour_lengths_2d(dist.data(), field.grid.n, field.grid.h(), levels);
    return surface_areas_3d(dist.data(), field.grid.n, field.grid.h(), levels);
}

} // namespace detail

inline double surface_at(const DistanceField& field, double r,
                         SurfaceMethod method = SurfaceMethod::level_set) {
    detail::require_resolvable(field, r);
    if (method == SurfaceMethod::level_set) {
        const auto dist = detail::materialize_dist(field);
        return detail::level_set_areas(field, dist, {r})[0];
    }
    const double h = field.grid.h();
    const double delta = std::max(0.5 * h, 0.005 * r);
    return (volume_at(field, r + delta) - volume_at(field, r - delta)) / (2.0 * delta);
}

// Batches volume counting plus both surface estimators over a radii schedule.
inline RadialProfile sample_profile(const DistanceField& field,
                                    const std::vector<double>& radii) {
    if (radii.empty()) throw std::invalid_argument("sample_profile: no radii");
    const double h = field.grid.h();
    for (std::size_t k = 0; k < radii.size(); ++k) {
        if (k > 0 && !(radii[k] > radii[k - 1]))
            throw std::invalid_argument("sample_profile: radii must be strictly increasing");
        detail::require_resolvable(field, radii[k]);
    }

    RadialProfile p;
    p.radii = radii;
    p.dim = field.grid.dim;
    p.source = ProfileSource::grid;
    p.grid_h = h;

    const double hd = std::pow(h, field.grid.dim);
    std::vector<std::int64_t> sorted(field.sq);
    std::sort(sorted.begin(), sorted.end());
    auto count_within = [&](double r) {
        const double thr = (r / h) * (r / h) * (1.0 + 2e-12);
        const std::int64_t q = static_cast<std::int64_t>(std::floor(thr));
        return static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), q) -
                                   sorted.begin());
    };
    p.v0 = hd * count_within(0.0);
    p.volume.resize(radii.size());
    for (std::size_t k = 0; k < radii.size(); ++k)
        p.volume[k] = hd * count_within(radii[k]);
    sorted.clear();
    sorted.shrink_to_fit();

    const auto dist = detail::materialize_dist(field);
    p.surface = detail::level_set_areas(field, dist, radii);

    p.surface_deriv.resize(radii.size());
    const std::size_t m = radii.size();
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t a = (k == 0) ? 0 : k - 1;
        const std::size_t b = (k + 1 == m) ? k : k + 1;
        p.surface_deriv[k] = (a == b) ? p.surface[k]
                                      : (p.volume[b] - p.volume[a]) / (p.radii[b] - p.radii[a]);
    }
    return p;
}

} // namespace parsets
