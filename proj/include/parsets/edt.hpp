#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "parsets/grid.hpp"
#include "parsets/parallel.hpp"

namespace parsets {

// Squared distances are exact integers in units of h^2, so two transforms can
// be compared cell-by-cell without tolerance.
struct DistanceField {
    GridSpec grid;
    std::vector<std::int64_t> sq; // squared Euclidean distance, grid units

    double dist(std::size_t i) const {
        return grid.h() * std::sqrt(static_cast<double>(sq[i]));
    }
};

namespace detail {

// Large sentinel kept small enough that sentinel + n^2 stays exactly
// representable in double inside the parabola intersection formula.
inline constexpr std::int64_t kEdtInf = std::int64_t(1) << 50;

// 1D squared-distance transform (lower envelope of parabolas), exact for
// integer inputs below 2^52: numerator and denominator of every intersection
// are integers representable in double, and a misrounded intersection can
// only move a boundary by less than the 1/(2n) gap to the nearest cell.
inline void edt_1d(const std::int64_t* f, std::int64_t* d, int n,
                   int* v, double* z) {
    int first = 0;
    while (first < n && f[first] >= kEdtInf) ++first;
    if (first == n) {
        for (int q = 0; q < n; ++q) d[q] = kEdtInf;
        return;
    }
    int k = 0;
    v[0] = first;
    z[0] = -std::numeric_limits<double>::infinity();
    z[1] = std::numeric_limits<double>::infinity();
    for (int q = first + 1; q < n; ++q) {
        if (f[q] >= kEdtInf) continue;
        double s;
        for (;;) {
            const int p = v[k];
            s = (static_cast<double>(f[q] - f[p]) +
                 static_cast<double>(static_cast<std::int64_t>(q) * q -
                                     static_cast<std::int64_t>(p) * p)) /
                (2.0 * (q - p));
            if (s > z[k]) break;
            --k; // z[0] = -inf guarantees k >= 0 here
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = std::numeric_limits<double>::infinity();
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        const std::int64_t dq = q - v[k];
        d[q] = dq * dq + f[v[k]];
    }
}

} // namespace detail

inline DistanceField exact_edt(const BinaryMask& mask) {
    if (mask.empty())
        throw std::invalid_argument("exact_edt: mask is empty");
    const GridSpec& g = mask.grid;
    const int n = g.n;
    DistanceField field;
    field.grid = g;
    field.sq.resize(g.cell_count());
    std::vector<std::int64_t>& sq = field.sq;

    for (std::size_t i = 0; i < sq.size(); ++i)
        sq[i] = mask.occ[i] ? 0 : detail::kEdtInf;

    const std::size_t planes = (g.dim == 3) ? static_cast<std::size_t>(n) : 1;

    // pass 1: rows (x)
    parallel_for(planes * n, [&](std::size_t line) {
        std::vector<std::int64_t> fbuf(n), dbuf(n);
        std::vector<int> v(n);
        std::vector<double> z(n + 1);
        std::int64_t* row = sq.data() + line * n;
        for (int i = 0; i < n; ++i) fbuf[i] = row[i];
        detail::edt_1d(fbuf.data(), dbuf.data(), n, v.data(), z.data());
        for (int i = 0; i < n; ++i) row[i] = dbuf[i];
    });

    // pass 2: columns (y), per z-plane
    parallel_for(planes * n, [&](std::size_t job) {
        std::vector<std::int64_t> fbuf(n), dbuf(n);
        std::vector<int> v(n);
        std::vector<double> z(n + 1);
        const std::size_t plane = job / n;
        const std::size_t x = job % n;
        std::int64_t* base = sq.data() + plane * static_cast<std::size_t>(n) * n + x;
        for (int i = 0; i < n; ++i) fbuf[i] = base[static_cast<std::size_t>(i) * n];
        detail::edt_1d(fbuf.data(), dbuf.data(), n, v.data(), z.data());
        for (int i = 0; i < n; ++i) base[static_cast<std::size_t>(i) * n] = dbuf[i];
    });

    if (g.dim == 3) {
        const std::size_t nn = static_cast<std::size_t>(n) * n;
        parallel_for(nn, [&](std::size_t xy) {
            std::vector<std::int64_t> fbuf(n), dbuf(n);
            std::vector<int> v(n);
            std::vector<double> z(n + 1);
            std::int64_t* base = sq.data() + xy;
            for (int i = 0; i < n; ++i) fbuf[i] = base[static_cast<std::size_t>(i) * nn];
            detail::edt_1d(fbuf.data(), dbuf.data(), n, v.data(), z.data());
            for (int i = 0; i < n; ++i) base[static_cast<std::size_t>(i) * nn] = dbuf[i];
        });
    }
    return field;
}

// All-pairs oracle, O(cells x seeds). Testing reference for exact_edt.
inline DistanceField brute_edt(const BinaryMask& mask) {
    if (mask.empty())
        throw std::invalid_argument("brute_edt: mask is empty");
    const GridSpec& g = mask.grid;
    const int n = g.n;
    const int nz = (g.dim == 3) ? n : 1;

    std::vector<std::array<int, 3>> seeds;
    for (int z = 0; z < nz; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x)
                if (mask.occ[g.flat(x, y, z)]) seeds.push_back({x, y, z});

    DistanceField field;
    field.grid = g;
    field.sq.resize(g.cell_count());
    parallel_for(static_cast<std::size_t>(nz) * n, [&](std::size_t line) {
        const int z = static_cast<int>(line / n);
        const int y = static_cast<int>(line % n);
        for (int x = 0; x < n; ++x) {
            std::int64_t best = std::numeric_limits<std::int64_t>::max();
            for (const auto& s : seeds) {
                const std::int64_t dx = x - s[0], dy = y - s[1], dz = z - s[2];
                const std::int64_t d2 = dx * dx + dy * dy + dz * dz;
                if (d2 < best) best = d2;
            }
            field.sq[g.flat(x, y, z)] = best;
        }
    });
    return field;
}

} // namespace parsets
