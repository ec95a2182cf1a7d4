#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "parsets/parallel.hpp"

namespace parsets {
namespace detail {

struct P2 {
    double x, y;
};

inline double seg_len(const P2& a, const P2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

struct P3 {
    double x, y, z;
};

inline double tri_area(const P3& a, const P3& b, const P3& c) {
    const double ux = b.x - a.x, uy = b.y - a.y, uz = b.z - a.z;
    const double vx = c.x - a.x, vy = c.y - a.y, vz = c.z - a.z;
    const double cx = uy * vz - uz * vy;
    const double cy = uz * vx - ux * vz;
    const double cz = ux * vy - uy * vx;
    return 0.5 * std::sqrt(cx * cx + cy * cy + cz * cz);
}

} // namespace detail

// Total length of the isocontours {value = level} of a scalar field sampled
// on an n x n lattice with spacing h (marching squares, linear interpolation
// along edges, saddle disambiguation by cell-center average). Levels must be
// sorted ascending; each square only visits the levels crossing it.
inline std::vector<double> contour_lengths_2d(const double* val, int n, double h,
                                              const std::vector<double>& levels) {
    const std::size_t nl = levels.size();
    std::vector<double> row_acc(static_cast<std::size_t>(n - 1) * nl, 0.0);

    parallel_for(static_cast<std::size_t>(n - 1), [&](std::size_t j) {
        double* acc = row_acc.data() + j * nl;
        const double* r0 = val + j * n;
        const double* r1 = val + (j + 1) * n;
        const double y0 = static_cast<double>(j) * h;
        for (int i = 0; i + 1 < n; ++i) {
            const double a = r0[i], b = r0[i + 1];
            const double e = r1[i], c = r1[i + 1];
            const double mn = std::min(std::min(a, b), std::min(c, e));
            const double mx = std::max(std::max(a, b), std::max(c, e));
            if (!(mn < mx)) continue;
            const auto lo = std::upper_bound(levels.begin(), levels.end(), mn);
            const auto hi = std::upper_bound(levels.begin(), levels.end(), mx);
            const double x0 = static_cast<double>(i) * h;
            for (auto it = lo; it != hi; ++it) {
                const double L = *it;
                int cs = 0;
                if (a < L) cs |= 1;
                if (b < L) cs |= 2;
                if (c < L) cs |= 4;
                if (e < L) cs |= 8;
                if (cs == 0 || cs == 15) continue;
                const std::size_t li = static_cast<std::size_t>(it - levels.begin());
                auto e0 = [&] { return detail::P2{x0 + h * (L - a) / (b - a), y0}; };
                auto e1 = [&] { return detail::P2{x0 + h, y0 + h * (L - b) / (c - b)}; };
                auto e2 = [&] { return detail::P2{x0 + h * (L - e) / (c - e), y0 + h}; };
                auto e3 = [&] { return detail::P2{x0, y0 + h * (L - a) / (e - a)}; };
                switch (cs) {
                    case 1: case 14: acc[li] += detail::seg_len(e0(), e3()); break;
                    case 2: case 13: acc[li] += detail::seg_len(e0(), e1()); break;
                    case 4: case 11: acc[li] += detail::seg_len(e1(), e2()); break;
                    case 8: case 7:  acc[li] += detail::seg_len(e2(), e3()); break;
                    case 3: case 12: acc[li] += detail::seg_len(e3(), e1()); break;
                    case 6: case 9:  acc[li] += detail::seg_len(e0(), e2()); break;
                    case 5: case 10: {
                        const bool center_in = 0.25 * (a + b + c + e) < L;
                        const bool diag5 = (cs == 5);
                        // saddle: pair the crossings so the inside corners
                        // connect through the center iff the center is inside
                        if (center_in == diag5) {
                            acc[li] += detail::seg_len(e0(), e1());
                            acc[li] += detail::seg_len(e2(), e3());
                        } else {
                            acc[li] += detail::seg_len(e0(), e3());
                            acc[li] += detail::seg_len(e1(), e2());
                        }
                        break;
                    }
                    default: break;
                }
            }
        }
    });

    std::vector<double> out(nl, 0.0);
    for (int j = 0; j + 1 < n; ++j)
        for (std::size_t k = 0; k < nl; ++k)
            out[k] += row_acc[static_cast<std::size_t>(j) * nl + k];
    return out;
}

// Isosurface area on an n x n x n lattice via marching tetrahedra (Kuhn
// six-tet cube split). Same batched-level contract as contour_lengths_2d.
inline std::vector<double> surface_areas_3d(const double* val, int n, double h,
                                            const std::vector<double>& levels) {
    const std::size_t nl = levels.size();
    const std::size_t nn = static_cast<std::size_t>(n) * n;
    std::vector<double> slab_acc(static_cast<std::size_t>(n - 1) * nl, 0.0);

    // vertex offsets indexed bx | by<<1 | bz<<2
    static const int off[8][3] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0},
                                  {0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
    static const int tets[6][4] = {{0, 1, 3, 7}, {0, 1, 5, 7}, {0, 2, 3, 7},
                                   {0, 2, 6, 7}, {0, 4, 5, 7}, {0, 4, 6, 7}};

    parallel_for(static_cast<std::size_t>(n - 1), [&](std::size_t kz) {
        double* acc = slab_acc.data() + kz * nl;
        double corner[8];
        detail::P3 pos[8];
        for (int jy = 0; jy + 1 < n; ++jy) {
            for (int ix = 0; ix + 1 < n; ++ix) {
                const std::size_t base = kz * nn + static_cast<std::size_t>(jy) * n + ix;
                double mn = 1e300, mx = -1e300;
                for (int vtx = 0; vtx < 8; ++vtx) {
                    const double d = val[base + off[vtx][0] +
                                         static_cast<std::size_t>(off[vtx][1]) * n +
                                         static_cast<std::size_t>(off[vtx][2]) * nn];
                    corner[vtx] = d;
                    mn = std::min(mn, d);
                    mx = std::max(mx, d);
                }
                if (!(mn < mx)) continue;
                const auto lo = std::upper_bound(levels.begin(), levels.end(), mn);
                const auto hi = std::upper_bound(levels.begin(), levels.end(), mx);
                if (lo == hi) continue;
                for (int vtx = 0; vtx < 8; ++vtx) {
                    pos[vtx] = {(ix + off[vtx][0]) * h, (jy + off[vtx][1]) * h,
                                (static_cast<double>(kz) + off[vtx][2]) * h};
                }
                for (auto it = lo; it != hi; ++it) {
                    const double L = *it;
                    const std::size_t li = static_cast<std::size_t>(it - levels.begin());
                    for (const auto& tet : tets) {
                        int in[4], out[4], ni = 0, no = 0;
                        for (int k = 0; k < 4; ++k) {
                            if (corner[tet[k]] < L) in[ni++] = tet[k];
                            else out[no++] = tet[k];
                        }
                        if (ni == 0 || ni == 4) continue;
                        auto cross = [&](int p, int q) {
                            const double u = corner[p], v = corner[q];
                            const double t = (L - u) / (v - u);
                            return detail::P3{pos[p].x + t * (pos[q].x - pos[p].x),
                                              pos[p].y + t * (pos[q].y - pos[p].y),
                                              pos[p].z + t * (pos[q].z - pos[p].z)};
                        };
                        if (ni == 1) {
                            acc[li] += detail::tri_area(cross(in[0], out[0]),
                                                        cross(in[0], out[1]),
                                                        cross(in[0], out[2]));
                        } else if (ni == 3) {
                            acc[li] += detail::tri_area(cross(in[0], out[0]),
                                                        cross(in[1], out[0]),
                                                        cross(in[2], out[0]));
                        } else {
                            const auto pac = cross(in[0], out[0]);
                            const auto pad = cross(in[0], out[1]);
                            const auto pbd = cross(in[1], out[1]);
                            const auto pbc = cross(in[1], out[0]);
                            acc[li] += detail::tri_area(pac, pad, pbd);
                            acc[li] += detail::tri_area(pac, pbd, pbc);
                        }
                    }
                }
            }
        }
    });

    std::vector<double> outv(nl, 0.0);
    for (int kz = 0; kz + 1 < n; ++kz)
        for (std::size_t k = 0; k < nl; ++k)
            outv[k] += slab_acc[static_cast<std::size_t>(kz) * nl + k];
    return outv;
}

} // namespace parsets
