#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "parsets/contents.hpp"
#include "parsets/edt.hpp"
#include "parsets/gasket.hpp"
#include "parsets/grid.hpp"
#include "parsets/profile.hpp"

namespace parsets {

// Contracting similarity x -> ratio * Q x + translation with Q orthogonal.
struct Similarity {
    double ratio = 0.5;
    std::array<std::array<double, 3>, 3> rot{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    Vec3 translate{0.0, 0.0, 0.0};

    Vec3 apply(const Vec3& p) const {
        Vec3 q{0, 0, 0};
        for (int i = 0; i < 3; ++i)
            q[i] = ratio * (rot[i][0] * p[0] + rot[i][1] * p[1] + rot[i][2] * p[2]) +
                   translate[i];
        return q;
    }

    // composition (this ∘ inner)
    Similarity then_inner(const Similarity& inner) const {
        Similarity out;
        out.ratio = ratio * inner.ratio;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double acc = 0.0;
                for (int k = 0; k < 3; ++k) acc += rot[i][k] * inner.rot[k][j];
                out.rot[i][j] = acc;
            }
        out.translate = apply(inner.translate);
        return out;
    }

    // solves (I - ratio Q) x = translate; invertible since ratio < 1
    Vec3 fixed_point() const {
        double a[3][4];
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) a[i][j] = (i == j ? 1.0 : 0.0) - ratio * rot[i][j];
            a[i][3] = translate[i];
        }
        for (int col = 0; col < 3; ++col) {
            int piv = col;
            for (int rr = col + 1; rr < 3; ++rr)
                if (std::abs(a[rr][col]) > std::abs(a[piv][col])) piv = rr;
            for (int j = 0; j < 4; ++j) std::swap(a[col][j], a[piv][j]);
            for (int rr = 0; rr < 3; ++rr) {
                if (rr == col) continue;
                const double f = a[rr][col] / a[col][col];
                for (int j = col; j < 4; ++j) a[rr][j] -= f * a[col][j];
            }
        }
        return {a[0][3] / a[0][0], a[1][3] / a[1][1], a[2][3] / a[2][2]};
    }
};

inline Similarity similarity_2d(double ratio, double angle_deg, const Vec3& translate,
                                bool reflect = false) {
    if (!(ratio > 0.0 && ratio < 1.0))
        throw std::invalid_argument("similarity ratio must lie in (0,1)");
    Similarity s;
    s.ratio = ratio;
    const double a = angle_deg * std::numbers::pi / 180.0;
    const double c = std::cos(a), sn = std::sin(a);
    s.rot = {{{c, reflect ? sn : -sn, 0}, {sn, reflect ? -c : c, 0}, {0, 0, 1}}};
    s.translate = translate;
    return s;
}

struct IFSystem {
    int dim = 2;
    std::vector<Similarity> maps;
    bool osc_declared = false;

    std::vector<double> ratios() const {
        std::vector<double> r;
        r.reserve(maps.size());
        for (const auto& m : maps) r.push_back(m.ratio);
        return r;
    }
};

inline void validate(const IFSystem& ifs) {
    if (ifs.dim != 2 && ifs.dim != 3)
        throw std::invalid_argument("IFSystem: dim must be 2 or 3");
    if (ifs.maps.size() < 2)
        throw std::invalid_argument("IFSystem: need N >= 2 maps");
    for (const auto& m : ifs.maps)
        if (!(m.ratio > 0.0 && m.ratio < 1.0))
            throw std::invalid_argument("IFSystem: ratios must lie in (0,1)");
}

// Unique root D of sum_i ratios[i]^s = 1.
inline double similarity_dimension(const std::vector<double>& ratios) {
    if (ratios.size() < 2)
        throw std::invalid_argument("similarity_dimension: need N >= 2 ratios");
    for (double r : ratios)
        if (!(r > 0.0 && r < 1.0))
            throw std::invalid_argument("similarity_dimension: ratios must lie in (0,1)");
    auto f = [&](double s) {
        double acc = 0.0;
        for (double r : ratios) acc += std::pow(r, s);
        return acc;
    };
    double lo = 0.0, hi = 1.0;
    while (f(hi) > 1.0) {
        hi *= 2.0;
        if (hi > 1e4) throw std::runtime_error("similarity_dimension: no root found");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 1.0) lo = mid; else hi = mid;
        if (hi - lo < 1e-15 * std::max(1.0, hi)) break;
    }
    const double D = 0.5 * (lo + hi);
    if (std::abs(f(D) - 1.0) > 1e-12)
        throw std::runtime_error("similarity_dimension: root refinement failed");
    return D;
}

struct LatticeClass {
    bool arithmetic = false;
    double h = 0.0;            // generator of the discrete group, if arithmetic
    long long max_denominator = 0;
};

namespace detail {

// best rational approximation p/q of x with q <= qmax, by continued fractions
inline bool approx_rational(double x, long long qmax, double tol,
                            long long& p_out, long long& q_out) {
    long long p0 = 1, q0 = 0, p1 = 0, q1 = 1; // p0/q0 previous, p1/q1 current
    double y = x;
    for (int it = 0; it < 64; ++it) {
        const double fl = std::floor(y);
        if (fl > 9e17) return false;
        const long long a = static_cast<long long>(fl);
        const long long p2 = a * p0 + p1;
        const long long q2 = a * q0 + q1;
        if (q2 > qmax || q2 < 0) return false;
        p1 = p0; q1 = q0; p0 = p2; q0 = q2;
        if (q0 > 0 && std::abs(x - static_cast<double>(p0) / q0) <= tol * std::abs(x)) {
            p_out = p0;
            q_out = q0;
            return true;
        }
        const double frac = y - fl;
        if (frac < 1e-15) return false;
        y = 1.0 / frac;
    }
    return false;
}

} // namespace detail

// Arithmetic (lattice) test: are all -ln r_i commensurable? The verdict is
// resolution-bounded; denominators past max_denominator read as non-arithmetic.
inline LatticeClass classify_lattice(const std::vector<double>& ratios,
                                     long long max_denominator = 1000000) {
    if (max_denominator < 1)
        throw std::invalid_argument("classify_lattice: max_denominator must be >= 1");
    std::vector<double> logs;
    for (double r : ratios) {
        if (!(r > 0.0 && r < 1.0))
            throw std::invalid_argument("classify_lattice: ratios must lie in (0,1)");
        logs.push_back(-std::log(r));
    }
    LatticeClass out;
    out.max_denominator = max_denominator;
    const double l0 = logs[0];
    long long L = 1;
    std::vector<std::pair<long long, long long>> fracs; // p/q = logs[i]/l0
    // acceptance tolerance sits at the double-precision noise floor: a looser
    // cut such as 1e-12 lets deep convergents of genuinely irrational ratios
    // (e.g. ln3/ln2 at denominator 190537) masquerade as rational
    for (std::size_t i = 1; i < logs.size(); ++i) {
        long long p = 0, q = 1;
        if (!detail::approx_rational(logs[i] / l0, max_denominator, 1e-14, p, q))
            return out; // non-arithmetic at this resolution
        fracs.emplace_back(p, q);
        const long long g = std::gcd(L, q);
        if (L / g > max_denominator / q + 1) return out;
        L = L / g * q;
        if (L > max_denominator) return out;
    }
    long long g = L; // multiplier of logs[0] in units of l0 / L
    for (const auto& [p, q] : fracs) g = std::gcd(g, p * (L / q));
    out.arithmetic = true;
    out.h = l0 * static_cast<double>(g) / static_cast<double>(L);
    return out;
}

// Axis-aligned bound of the attractor: iterate the box map B -> bbox(S(B))
// from the fixed points until stationary.
inline Box attractor_bounds(const IFSystem& ifs) {
    validate(ifs);
    Box b;
    Vec3 fp0 = ifs.maps[0].fixed_point();
    b.lo = b.hi = fp0;
    for (const auto& m : ifs.maps) {
        const Vec3 fp = m.fixed_point();
        for (int k = 0; k < 3; ++k) {
            b.lo[k] = std::min(b.lo[k], fp[k]);
            b.hi[k] = std::max(b.hi[k], fp[k]);
        }
    }
    for (int it = 0; it < 20000; ++it) {
        Box nb;
        bool first = true;
        for (const auto& m : ifs.maps) {
            // image of the box: map the 8 corners (orthogonal part => box image
            // is contained in the bbox of mapped corners)
            for (int cx = 0; cx < 2; ++cx)
                for (int cy = 0; cy < 2; ++cy)
                    for (int cz = 0; cz < 2; ++cz) {
                        const Vec3 corner{cx ? b.hi[0] : b.lo[0], cy ? b.hi[1] : b.lo[1],
                                          cz ? b.hi[2] : b.lo[2]};
                        const Vec3 q = m.apply(corner);
                        if (first) {
                            nb.lo = nb.hi = q;
                            first = false;
                        } else {
                            for (int k = 0; k < 3; ++k) {
                                nb.lo[k] = std::min(nb.lo[k], q[k]);
                                nb.hi[k] = std::max(nb.hi[k], q[k]);
                            }
                        }
                    }
        }
        // keep every fixed point inside and stop when stationary
        double move = 0.0;
        for (int k = 0; k < 3; ++k) {
            nb.lo[k] = std::min(nb.lo[k], b.lo[k]);
            nb.hi[k] = std::max(nb.hi[k], b.hi[k]);
            move = std::max(move, std::abs(nb.lo[k] - b.lo[k]));
            move = std::max(move, std::abs(nb.hi[k] - b.hi[k]));
        }
        b = nb;
        if (move < 1e-14) break;
    }
    return b;
}

inline double attractor_diameter(const IFSystem& ifs) {
    const Box b = attractor_bounds(ifs);
    double acc = 0.0;
    for (int k = 0; k < ifs.dim; ++k) acc += (b.hi[k] - b.lo[k]) * (b.hi[k] - b.lo[k]);
    return std::sqrt(acc);
}

// Word-space rasterization: expand words until the image spans under a
// quarter cell, then stamp every cell whose center lies within 0.3 h of a
// leaf point. The tight stamping radius keeps cell centers from intruding
// into barely-open holes of the attractor, which would otherwise erase the
// inner boundary components of the smallest resolved parallel sets.
inline BinaryMask rasterize_attractor(const IFSystem& ifs, const GridSpec& grid) {
    validate(ifs);
    if (ifs.dim != grid.dim)
        throw std::invalid_argument("rasterize_attractor: grid dimension mismatch");
    const Box ab = attractor_bounds(ifs);
    for (int k = 0; k < ifs.dim; ++k) {
        if (ab.lo[k] < grid.lo[k] - 1e-12 || ab.hi[k] > grid.lo[k] + grid.extent + 1e-12)
            throw std::invalid_argument("rasterize_attractor: attractor exceeds grid bbox");
    }
    const double diam = attractor_diameter(ifs);
    const double stop = 0.25 * grid.h() / std::max(diam, 1e-300);
    const double h = grid.h();
    const double d2max = 0.09 * h * h;

    std::vector<Vec3> seeds;
    seeds.reserve(ifs.maps.size());
    for (const auto& m : ifs.maps) seeds.push_back(m.fixed_point());

    auto for_each_leaf_point = [&](auto&& fn) {
        std::vector<Similarity> stack;
        Similarity id;
        id.ratio = 1.0;
        stack.push_back(id);
        while (!stack.empty()) {
            const Similarity w = stack.back();
            stack.pop_back();
            if (w.ratio < stop) {
                for (const auto& s : seeds) fn(w.apply(s));
                continue;
            }
            for (const auto& m : ifs.maps) stack.push_back(w.then_inner(m));
        }
    };

    BinaryMask mask = make_empty_mask(grid);
    const int nz = grid.dim == 3 ? 1 : 0;
    for_each_leaf_point([&](const Vec3& q) {
        const auto c = cell_of(grid, q);
        for (int dz = -nz; dz <= nz; ++dz)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    const int ix = c[0] + dx, iy = c[1] + dy, iz = c[2] + dz;
                    if (ix < 0 || iy < 0 || ix >= grid.n || iy >= grid.n) continue;
                    if (grid.dim == 3 && (iz < 0 || iz >= grid.n)) continue;
                    const Vec3 cc = grid.center(ix, iy, iz);
                    double d2 = 0.0;
                    for (int k = 0; k < grid.dim; ++k)
                        d2 += (cc[k] - q[k]) * (cc[k] - q[k]);
                    if (d2 <= d2max) stamp_cell(mask, ix, iy, iz);
                }
    });

    // coverage pass: parts of the attractor that run along cell-boundary
    // lines never come within the stamping radius of any center; give those
    // samples their containing cell so the mask never develops gaps
    for_each_leaf_point([&](const Vec3& q) {
        const auto c = cell_of(grid, q);
        for (int dz = -nz; dz <= nz; ++dz)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    const int ix = c[0] + dx, iy = c[1] + dy, iz = c[2] + dz;
                    if (ix < 0 || iy < 0 || ix >= grid.n || iy >= grid.n) continue;
                    if (grid.dim == 3 && (iz < 0 || iz >= grid.n)) continue;
                    if (mask.occ[grid.flat(ix, iy, iz)]) return;
                }
        stamp_cell(mask, c[0], c[1], c[2]);
    });
    if (mask.empty()) throw std::runtime_error("rasterize_attractor: empty mask");
    return mask;
}

// Geometric schedule on [r_min, 1] augmented with a one-sided pair at every
// distinct contraction ratio: R jumps where an indicator flips, and the
// renewal quadrature must see both sides of each jump.
inline std::vector<double> renewal_radii(double r_min, int per_octave,
                                         const std::vector<double>& ratios) {
    std::vector<double> out = geometric_radii(r_min, 1.0, per_octave);
    for (const double ri : ratios) {
        if (ri <= r_min * (1.0 + 1e-9) || ri >= 1.0) continue;
        out.push_back(ri);
        out.push_back(ri * (1.0 + 1e-9));
    }
    std::sort(out.begin(), out.end());
    std::vector<double> dedup;
    for (const double r : out)
        if (dedup.empty() || r > dedup.back() * (1.0 + 1e-12)) dedup.push_back(r);
    return dedup;
}

// Surface defect R(r) = S(r) - sum_i 1{r <= r_i} r_i^(d-1) S(r/r_i), using the
// scaling identity for the small copies. S is interpolated linearly in log r.
// The surface column is carried along so downstream consumers can tell a
// genuinely small defect from one drowned in surface-estimate error.
struct RSamples {
    std::vector<double> r;
    std::vector<double> R;
    std::vector<double> S;
};

inline RSamples r_function(const RadialProfile& p, const std::vector<double>& ratios, int d) {
    if (p.size() < 2) throw std::invalid_argument("r_function: profile too short");
    const double r_min = p.radii.front();
    const double r_max = p.radii.back();
    if (r_max < 1.0 - 1e-9)
        throw std::invalid_argument("r_function: profile must reach r = 1");
    std::vector<double> logr(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) logr[k] = std::log(p.radii[k]);
    auto interp_S = [&](double r) {
        const double lx = std::log(r);
        auto it = std::upper_bound(logr.begin(), logr.end(), lx);
        std::size_t k = it == logr.begin() ? 0 : static_cast<std::size_t>(it - logr.begin()) - 1;
        if (k + 1 >= p.size()) k = p.size() - 2;
        const double t = (lx - logr[k]) / (logr[k + 1] - logr[k]);
        return p.surface[k] + std::max(0.0, std::min(1.0, t)) * (p.surface[k + 1] - p.surface[k]);
    };
    RSamples out;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double r = p.radii[k];
        if (r > 1.0 * (1.0 + 1e-12)) break;
        if (r < r_min * (1.0 - 1e-12))
            throw std::invalid_argument("r_function: insufficient radius coverage");
        double acc = p.surface[k];
        for (const double ri : ratios) {
            if (r <= ri * (1.0 + 1e-12))
                acc -= std::pow(ri, d - 1.0) * interp_S(std::min(1.0, r / ri));
        }
        out.r.push_back(r);
        out.R.push_back(acc);
        out.S.push_back(p.surface[k]);
    }
    if (out.r.size() < 2) throw std::invalid_argument("r_function: no radii at or below 1");
    return out;
}

struct RenewalResult {
    double D = 0.0;
    double eta = 0.0;
    LatticeClass lattice;
    std::vector<double> r_samples;
    std::vector<double> R_values;
    double integral = 0.0;    // (1/eta) int_0^1 r^(D-d) R(r) dr
    double normalized = 0.0;  // integral / ((d-D) kappa_{d-D})
    double tail_fraction = 0.0;
    double fit_exponent = 0.0; // p in R ~ a r^p on the smallest octave
    double gamma_hat = 0.0;    // p - (d-1-D), the empirical decay margin
};

// Trapezoid of r^(D-d+1) R(r) in log r plus a fitted power tail below the
// smallest sample. The decay hypothesis |R| <= c r^(d-1-D+gamma) must give an
// integrable endpoint (gamma_hat > 0) or the evaluation refuses. fit_floor
// marks the smallest radius whose R value the caller trusts, and trust sets
// the measurement floor: window defect values below trust * S count as
// indistinguishable from zero (R is a difference of near-equal surface
// estimates, so grid pipelines cannot resolve small defects).
inline RenewalResult renewal_s_content(const RSamples& rs, double D,
                                       const std::vector<double>& ratios, int d,
                                       double fit_floor = 0.0, double trust = 0.0) {
    if (rs.r.size() < 8) throw std::invalid_argument("renewal_s_content: too few samples");
    RenewalResult out;
    out.D = D;
    out.r_samples = rs.r;
    out.R_values = rs.R;
    out.eta = 0.0;
    for (const double ri : ratios) out.eta -= std::pow(ri, D) * std::log(ri);
    if (!(out.eta > 0.0)) throw std::invalid_argument("renewal_s_content: eta must be > 0");

    const double r_min = rs.r.front();
    const double floor_r = std::max(fit_floor, r_min);
    double main = 0.0, fit_window_abs = 0.0;
    for (std::size_t k = 0; k + 1 < rs.r.size(); ++k) {
        const double f0 = std::pow(rs.r[k], D - d + 1.0) * rs.R[k];
        const double f1 = std::pow(rs.r[k + 1], D - d + 1.0) * rs.R[k + 1];
        const double dlr = std::log(rs.r[k + 1] / rs.r[k]);
        main += 0.5 * (f0 + f1) * dlr;
        if (rs.r[k] >= floor_r * (1.0 - 1e-12) &&
            rs.r[k + 1] <= 2.0 * floor_r * (1.0 + 1e-12))
            fit_window_abs += 0.5 * (std::abs(f0) + std::abs(f1)) * dlr;
    }
    // the unsampled endpoint only matters when the smallest trusted octave
    // still carries weight relative to the whole integral
    const bool endpoint_material = fit_window_abs > 0.02 * std::abs(main);

    // power fit on the smallest trusted octave
    std::vector<double> xs, ys;
    double sgn = 0.0, max_abs_R = 0.0, max_S = 0.0;
    for (std::size_t k = 0; k < rs.r.size() && rs.r[k] <= 2.0 * floor_r * (1 + 1e-12); ++k) {
        if (rs.r[k] < floor_r * (1.0 - 1e-12)) continue;
        max_abs_R = std::max(max_abs_R, std::abs(rs.R[k]));
        if (k < rs.S.size()) max_S = std::max(max_S, rs.S[k]);
        if (rs.R[k] != 0.0) {
            xs.push_back(std::log(rs.r[k]));
            ys.push_back(std::log(std::abs(rs.R[k])));
            sgn += rs.R[k] > 0 ? 1.0 : -1.0;
        }
    }
    if (max_abs_R <= trust * max_S) xs.clear(); // defect below the measurement floor
    double tail = 0.0;
    out.fit_exponent = std::numeric_limits<double>::quiet_NaN();
    out.gamma_hat = std::numeric_limits<double>::quiet_NaN();
    if (xs.size() >= 3 && std::abs(sgn) == static_cast<double>(xs.size())) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const auto m = static_cast<double>(xs.size());
        for (std::size_t k = 0; k < xs.size(); ++k) {
            sx += xs[k];
            sy += ys[k];
            sxx += xs[k] * xs[k];
            sxy += xs[k] * ys[k];
        }
        const double p = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        const double intercept = (sy - p * sx) / m;
        double fit_resid = 0.0;
        for (std::size_t k = 0; k < xs.size(); ++k)
            fit_resid = std::max(fit_resid, std::abs(ys[k] - (intercept + p * xs[k])));
        if (fit_resid <= 0.5) { // the window really follows a power law
            out.fit_exponent = p;
            out.gamma_hat = p - (d - 1.0 - D);
            if (out.gamma_hat < 0.02 && endpoint_material)
                throw std::runtime_error(
                    "renewal_s_content: endpoint fit violates the decay hypothesis "
                    "|R(r)| <= c r^(d-1-D+gamma) with gamma > 0 (fitted gamma_hat = " +
                    std::to_string(out.gamma_hat) + ")");
            if (out.gamma_hat >= 0.02) {
                const double a = (sgn > 0 ? 1.0 : -1.0) * std::exp(intercept);
                tail = a * std::pow(r_min, out.gamma_hat) / out.gamma_hat;
            }
        }
        // a window that does not follow a power law (noisy grid defect values
        // whose true magnitude is below the discretization floor) contributes
        // no extrapolated tail
    }
    out.integral = (main + tail) / out.eta;
    out.tail_fraction = std::abs(tail) / std::max(std::abs(main + tail), 1e-300);
    out.normalized = out.integral / ((d - D) * kappa(d - D));
    out.lattice = classify_lattice(ratios);
    return out;
}

struct IFSAnalysis {
    double D = 0.0;
    LatticeClass lattice;
    RenewalResult renewal;
    double average_surface = 0.0; // Cesaro average of the surface series at s = D
    double average_volume = 0.0;  // same for the volume series
    ContentEstimate bounds_surface;
    ContentEstimate bounds_volume;
    double surface_spread = 0.0; // sup - inf over the two smallest octaves
    RadialProfile profile;
    double grid_h_fine = 0.0;
    double grid_h_coarse = 0.0;
};

// Full pipeline: rasterize, profile, similarity dimension, lattice class, R,
// renewal integral and average contents. Small radii come from a tight grid
// around the attractor, large radii (up to 1) from a padded coarse grid; the
// two profiles are stitched at 0.15 diam.
inline IFSAnalysis analyze_ifs(const IFSystem& ifs, int resolution, double r_min = 0.0,
                               int per_octave = 16) {
    validate(ifs);
    if (!ifs.osc_declared)
        throw std::invalid_argument(
            "analyze_ifs: the open set condition must be declared (osc: true); the "
            "renewal and content theorems assume it");
    if (resolution < 64) throw std::invalid_argument("analyze_ifs: resolution too small");

    IFSAnalysis out;
    const auto ratios = ifs.ratios();
    out.D = similarity_dimension(ratios);
    out.lattice = classify_lattice(ratios);
    const int d = ifs.dim;

    const Box ab = attractor_bounds(ifs);
    const double diam = attractor_diameter(ifs);
    double width = 0.0;
    Vec3 mid{0, 0, 0};
    for (int k = 0; k < d; ++k) {
        width = std::max(width, ab.hi[k] - ab.lo[k]);
        mid[k] = 0.5 * (ab.lo[k] + ab.hi[k]);
    }
    auto centered_grid = [&](double pad) {
        const double ext = width + 2.0 * pad;
        Box b;
        for (int k = 0; k < d; ++k) {
            b.lo[k] = mid[k] - 0.5 * ext;
            b.hi[k] = mid[k] + 0.5 * ext;
        }
        return make_grid(b, resolution, d);
    };

    const double stitch = 0.15 * diam;
    const GridSpec fine = centered_grid(std::max(0.18 * diam, stitch + 4.0 * (width + 0.4 * diam) / resolution));
    const GridSpec coarse = centered_grid(1.05);
    out.grid_h_fine = fine.h();
    out.grid_h_coarse = coarse.h();

    const double r_lo = std::max({r_min, 2.0 * fine.h() * (1.0 + 1e-9)});
    if (!(r_lo < stitch))
        throw std::invalid_argument("analyze_ifs: resolution too coarse for the radii range");
    std::vector<double> schedule = renewal_radii(r_lo, per_octave, ratios);
    if (std::none_of(schedule.begin(), schedule.end(),
                     [&](double r) { return std::abs(r - stitch) < 1e-12 * stitch; }))
        schedule.push_back(stitch);
    std::sort(schedule.begin(), schedule.end());

    std::vector<double> radii_fine, radii_coarse;
    for (const double r : schedule) {
        if (r <= stitch * (1.0 + 1e-12)) radii_fine.push_back(r);
        else radii_coarse.push_back(r);
    }
    if (radii_coarse.empty() || radii_fine.size() < 4)
        throw std::invalid_argument("analyze_ifs: radii schedule degenerate");

    const auto field_fine = exact_edt(rasterize_attractor(ifs, fine));
    const auto pf = sample_profile(field_fine, radii_fine);
    const auto field_coarse = exact_edt(rasterize_attractor(ifs, coarse));
    const auto pc = sample_profile(field_coarse, radii_coarse);

    RadialProfile merged;
    merged.dim = d;
    merged.source = ProfileSource::grid;
    merged.grid_h = fine.h();
    merged.v0 = pf.v0;
    auto append = [&](const RadialProfile& p) {
        merged.radii.insert(merged.radii.end(), p.radii.begin(), p.radii.end());
        merged.volume.insert(merged.volume.end(), p.volume.begin(), p.volume.end());
        merged.surface.insert(merged.surface.end(), p.surface.begin(), p.surface.end());
        merged.surface_deriv.insert(merged.surface_deriv.end(), p.surface_deriv.begin(),
                                    p.surface_deriv.end());
    };
    append(pf);
    append(pc);
    out.profile = merged;

    const auto rs = r_function(merged, ratios, d);
    out.renewal = renewal_s_content(rs, out.D, ratios, d, 8.0 * fine.h(), 0.05);
    out.average_surface = average_content(merged, out.D, ContentKind::surface);
    out.average_volume = average_content(merged, out.D, ContentKind::volume);
    out.bounds_surface = content_bounds(merged, out.D, ContentKind::surface);
    out.bounds_volume = content_bounds(merged, out.D, ContentKind::volume);

    const Window w2{merged.radii.front(), 4.0 * merged.radii.front()};
    const auto sb = content_bounds(merged, out.D, ContentKind::surface, w2);
    out.surface_spread = sb.upper - sb.lower;
    return out;
}

inline IFSystem gasket_ifs() {
    IFSystem ifs;
    ifs.dim = 2;
    ifs.osc_declared = true;
    ifs.maps.push_back(similarity_2d(0.5, 0.0, {0.0, 0.0, 0.0}));
    ifs.maps.push_back(similarity_2d(0.5, 0.0, {0.5, 0.0, 0.0}));
    ifs.maps.push_back(similarity_2d(0.5, 0.0, {0.25, std::numbers::sqrt3 / 4.0, 0.0}));
    return ifs;
}

} // namespace parsets
