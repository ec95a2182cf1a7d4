#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "parsets/grid.hpp"
#include "parsets/profile.hpp"

namespace parsets {

// Closed-form V/S oracles for the analytic reference sets. Shapes are placed
// centered in whatever grid they are rasterized on.
struct Shape {
    enum class Kind { point, segment, two_segments, disk, ball, square };
    Kind kind = Kind::disk;
    double length = 0.0;   // segment / square side
    double half_gap = 0.0; // two_segments: half the gap 2a
    double radius = 0.0;   // disk / ball
    int dim = 2;
};

inline Shape parse_shape(const std::string& spec) {
    auto next_param = [&](std::size_t& pos) {
        if (pos == std::string::npos || pos >= spec.size())
            throw std::invalid_argument("shape spec '" + spec + "': missing parameter");
        std::size_t colon = spec.find(':', pos);
        std::string tok = spec.substr(pos, colon == std::string::npos ? colon : colon - pos);
        pos = colon == std::string::npos ? std::string::npos : colon + 1;
        double v = std::stod(tok);
        if (!(v > 0.0)) throw std::invalid_argument("shape parameter must be > 0");
        return v;
    };
    std::size_t pos = spec.find(':');
    const std::string name = spec.substr(0, pos);
    if (pos != std::string::npos) ++pos;
    Shape s;
    if (name == "point") {
        s.kind = Shape::Kind::point;
    } else if (name == "seg" || name == "segment") {
        s.kind = Shape::Kind::segment;
        s.length = next_param(pos);
    } else if (name == "twoseg") {
        s.kind = Shape::Kind::two_segments;
        s.length = next_param(pos);
        s.half_gap = next_param(pos);
    } else if (name == "disk") {
        s.kind = Shape::Kind::disk;
        s.radius = next_param(pos);
    } else if (name == "ball") {
        s.kind = Shape::Kind::ball;
        s.radius = next_param(pos);
        s.dim = 3;
    } else if (name == "square") {
        s.kind = Shape::Kind::square;
        s.length = next_param(pos);
    } else {
        throw std::invalid_argument("unknown shape '" + name + "'");
    }
    return s;
}

inline double shape_diameter(const Shape& s) {
    switch (s.kind) {
        case Shape::Kind::point: return 1.0; // scale stand-in for radii defaults
        case Shape::Kind::segment: return s.length;
        case Shape::Kind::two_segments:
            return std::hypot(s.length, 2.0 * s.half_gap);
        case Shape::Kind::disk:
        case Shape::Kind::ball: return 2.0 * s.radius;
        case Shape::Kind::square: return s.length * std::numbers::sqrt2;
    }
    return 1.0;
}

// One-sided values at the touching radius r = a of the two-segment set: the
// closed parallel set loses the inner sides exactly at the merge, while the
// open one keeps the contact line as boundary.
struct TwoSegmentsMerge {
    double r_touch = 0.0;
    double surface_closed = 0.0;   // limit from above, boundary of closed set
    double surface_open = 0.0;     // open-neighbourhood boundary at r = a
    double surface_premerge = 0.0; // limit from below (two disjoint stadiums)
};

inline TwoSegmentsMerge two_segments_merge(const Shape& s) {
    if (s.kind != Shape::Kind::two_segments)
        throw std::invalid_argument("two_segments_merge: wrong shape kind");
    const double pi = std::numbers::pi;
    TwoSegmentsMerge m;
    m.r_touch = s.half_gap;
    m.surface_closed = 2.0 * s.length + 4.0 * pi * s.half_gap;
    m.surface_open = 3.0 * s.length + 4.0 * pi * s.half_gap;
    m.surface_premerge = 4.0 * s.length + 4.0 * pi * s.half_gap;
    return m;
}

inline void shape_values(const Shape& s, double r, double& V, double& S) {
    const double pi = std::numbers::pi;
    switch (s.kind) {
        case Shape::Kind::point:
            if (s.dim == 2) {
                V = pi * r * r;
                S = 2.0 * pi * r;
            } else {
                V = 4.0 / 3.0 * pi * r * r * r;
                S = 4.0 * pi * r * r;
            }
            return;
        case Shape::Kind::segment:
            V = 2.0 * s.length * r + pi * r * r;
            S = 2.0 * s.length + 2.0 * pi * r;
            return;
        case Shape::Kind::two_segments:
            if (r > s.half_gap * (1.0 + 1e-12))
                throw std::invalid_argument(
                    "two_segments oracle is valid for r <= a only (disjoint regime)");
            V = 2.0 * (2.0 * s.length * r + pi * r * r);
            S = 4.0 * s.length + 4.0 * pi * r;
            return;
        case Shape::Kind::disk:
            V = pi * (s.radius + r) * (s.radius + r);
            S = 2.0 * pi * (s.radius + r);
            return;
        case Shape::Kind::ball: {
            const double q = s.radius + r;
            V = 4.0 / 3.0 * pi * q * q * q;
            S = 4.0 * pi * q * q;
            return;
        }
        case Shape::Kind::square:
            V = s.length * s.length + 4.0 * s.length * r + pi * r * r;
            S = 4.0 * s.length + 2.0 * pi * r;
            return;
    }
    throw std::logic_error("unreachable");
}

inline double shape_v0(const Shape& s) {
    const double pi = std::numbers::pi;
    switch (s.kind) {
        case Shape::Kind::disk: return pi * s.radius * s.radius;
        case Shape::Kind::ball: return 4.0 / 3.0 * pi * s.radius * s.radius * s.radius;
        case Shape::Kind::square: return s.length * s.length;
        default: return 0.0;
    }
}

inline RadialProfile shape_profile(const Shape& s, const std::vector<double>& radii) {
    if (radii.empty()) throw std::invalid_argument("shape_profile: no radii");
    RadialProfile p;
    p.radii = radii;
    p.dim = s.dim;
    p.source = ProfileSource::analytic;
    p.v0 = shape_v0(s);
    p.volume.resize(radii.size());
    p.surface.resize(radii.size());
    for (std::size_t k = 0; k < radii.size(); ++k) {
        if (!(radii[k] > 0.0) || (k > 0 && radii[k] <= radii[k - 1]))
            throw std::invalid_argument("shape_profile: radii must be positive increasing");
        shape_values(s, radii[k], p.volume[k], p.surface[k]);
    }
    p.surface_deriv = p.surface;
    return p;
}

// Occupies the cells whose centers lie on (or within) the shape, centered in
// the grid box. Lower-dimensional shapes are sampled at h/4 spacing.
inline BinaryMask rasterize_shape(const Shape& s, const GridSpec& g) {
    const double h = g.h();
    Vec3 c{g.lo[0] + 0.5 * g.extent, g.lo[1] + 0.5 * g.extent,
           g.dim == 3 ? g.lo[2] + 0.5 * g.extent : 0.0};
    BinaryMask m = make_empty_mask(g);

    auto stamp_point = [&](const Vec3& p) {
        const auto idx = cell_of(g, p);
        stamp_cell(m, idx[0], idx[1], idx[2]);
    };
    auto stamp_segment = [&](double y) {
        const int steps = static_cast<int>(std::ceil(s.length / (0.25 * h)));
        for (int k = 0; k <= steps; ++k) {
            const double x = c[0] - 0.5 * s.length + s.length * k / steps;
            stamp_point({x, y, 0.0});
        }
    };

    switch (s.kind) {
        case Shape::Kind::point:
            stamp_point(c);
            break;
        case Shape::Kind::segment:
            stamp_segment(c[1]);
            break;
        case Shape::Kind::two_segments:
            stamp_segment(c[1] - s.half_gap);
            stamp_segment(c[1] + s.half_gap);
            break;
        case Shape::Kind::disk:
        case Shape::Kind::square: {
            for (int iy = 0; iy < g.n; ++iy) {
                for (int ix = 0; ix < g.n; ++ix) {
                    const Vec3 p = g.center(ix, iy);
                    const double dx = p[0] - c[0], dy = p[1] - c[1];
                    const bool in =
                        s.kind == Shape::Kind::disk
                            ? dx * dx + dy * dy <= s.radius * s.radius
                            : std::abs(dx) <= 0.5 * s.length && std::abs(dy) <= 0.5 * s.length;
                    if (in) stamp_cell(m, ix, iy);
                }
            }
            break;
        }
        case Shape::Kind::ball: {
            for (int iz = 0; iz < g.n; ++iz)
                for (int iy = 0; iy < g.n; ++iy)
                    for (int ix = 0; ix < g.n; ++ix) {
                        const Vec3 p = g.center(ix, iy, iz);
                        const double dx = p[0] - c[0], dy = p[1] - c[1], dz = p[2] - c[2];
                        if (dx * dx + dy * dy + dz * dz <= s.radius * s.radius)
                            stamp_cell(m, ix, iy, iz);
                    }
            break;
        }
    }
    if (m.empty()) throw std::runtime_error("rasterize_shape: produced empty mask");
    return m;
}

} // namespace parsets
