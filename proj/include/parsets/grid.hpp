#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace parsets {

using Vec3 = std::array<double, 3>;

struct Box {
    Vec3 lo{0.0, 0.0, 0.0};
    Vec3 hi{0.0, 0.0, 0.0};
};

// Cubical cell grid over an axis-aligned box. Cells are addressed x-fastest;
// centers sit at lo + (i + 1/2) h.
struct GridSpec {
    int dim = 2;
    int n = 0;
    Vec3 lo{0.0, 0.0, 0.0};
    double extent = 0.0;

    double h() const { return extent / n; }

    std::size_t cell_count() const {
        std::size_t c = static_cast<std::size_t>(n);
        for (int k = 1; k < dim; ++k) c *= static_cast<std::size_t>(n);
        return c;
    }

    std::size_t flat(int ix, int iy, int iz = 0) const {
        std::size_t idx = static_cast<std::size_t>(iy) * n + ix;
        if (dim == 3) idx += static_cast<std::size_t>(iz) * n * n;
        return idx;
    }

    Vec3 center(int ix, int iy, int iz = 0) const {
        const double hh = h();
        return {lo[0] + (ix + 0.5) * hh, lo[1] + (iy + 0.5) * hh,
                dim == 3 ? lo[2] + (iz + 0.5) * hh : 0.0};
    }
};

inline GridSpec make_grid(const Box& bbox, int n, int dim) {
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("make_grid: dim must be 2 or 3");
    if (n < 2)
        throw std::invalid_argument("make_grid: n must be >= 2");
    double ext = bbox.hi[0] - bbox.lo[0];
    if (!(ext > 0.0))
        throw std::invalid_argument("make_grid: degenerate bbox");
    for (int k = 1; k < dim; ++k) {
        const double e = bbox.hi[k] - bbox.lo[k];
        if (std::abs(e - ext) > 1e-12 * std::max(std::abs(e), std::abs(ext)))
            throw std::invalid_argument("make_grid: bbox is not cubical");
    }
    GridSpec g;
    g.dim = dim;
    g.n = n;
    g.lo = bbox.lo;
    g.extent = ext;
    return g;
}

// Occupancy mask: the seed set A is the union of the occupied cell centers.
struct BinaryMask {
    GridSpec grid;
    std::vector<std::uint8_t> occ;
    std::size_t count = 0;

    bool empty() const { return count == 0; }
};

inline BinaryMask make_empty_mask(const GridSpec& grid) {
    BinaryMask m;
    m.grid = grid;
    m.occ.assign(grid.cell_count(), 0);
    return m;
}

inline void stamp_cell(BinaryMask& m, int ix, int iy, int iz = 0) {
    std::uint8_t& c = m.occ[m.grid.flat(ix, iy, iz)];
    if (!c) {
        c = 1;
        ++m.count;
    }
}

// Snaps a point to its containing cell. Points on the far boundary belong to
// the last cell.
inline std::array<int, 3> cell_of(const GridSpec& g, const Vec3& p) {
    std::array<int, 3> idx{0, 0, 0};
    const double hh = g.h();
    for (int k = 0; k < g.dim; ++k) {
        const double s = (p[k] - g.lo[k]) / hh;
        if (s < 0.0 || s > g.n) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "point (%.17g, %.17g, %.17g) outside grid bbox",
                          p[0], p[1], p[2]);
            throw std::invalid_argument(buf);
        }
        int i = static_cast<int>(s);
        if (i >= g.n) i = g.n - 1;
        idx[k] = i;
    }
    return idx;
}

inline BinaryMask mask_from_points(const std::vector<Vec3>& points, const GridSpec& grid) {
    BinaryMask m = make_empty_mask(grid);
    for (const auto& p : points) {
        const auto c = cell_of(grid, p);
        stamp_cell(m, c[0], c[1], c[2]);
    }
    return m;
}

} // namespace parsets
