#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "parsets/profile.hpp"

namespace parsets {

namespace gasket_detail {

inline constexpr double kSqrt3 = std::numbers::sqrt3;
inline const double kU = 1.0 / (4.0 * kSqrt3);          // inradius of the middle hole
inline const double kD = std::log(3.0) / std::log(2.0); // similarity dimension
inline const double kB = 3.0 * std::pow(kU, kD - 1.0);
inline const double kC = -3.0 * kSqrt3 * std::pow(kU, kD);

// c_n -> c as n grows; the 3^-n term only matters for shallow branches.
inline double c_n(int n) {
    return std::pow(kU, kD) *
           ((2.0 * std::numbers::pi + 3.0 * kSqrt3) * std::pow(3.0, -static_cast<double>(n)) -
            3.0 * kSqrt3);
}

} // namespace gasket_detail

// Exact parallel volume and boundary length of the Sierpinski gasket with unit
// side. Branch n covers r in [2^-n u, 2^-n+1 u); for r >= u all holes are
// filled and the filled-triangle Steiner polynomial applies. Evaluated in the
// scale-free form V = r^(2-D) h(alpha), S = r^(1-D) g(alpha) with
// alpha = r 2^n / u in [1,2), which stays finite for arbitrarily small r.
inline void gasket_exact(double r, double& V, double& S) {
    using namespace gasket_detail;
    const double pi = std::numbers::pi;
    if (!(r > 0.0)) throw std::invalid_argument("gasket_exact: r must be > 0");
    if (r >= kU) {
        V = pi * r * r + 3.0 * r + kSqrt3 / 4.0;
        S = 2.0 * pi * r + 3.0;
        return;
    }
    int n = static_cast<int>(std::floor(std::log2(kU / r))) + 1;
    // guard the branch selection against rounding at the interval edges:
    // alpha = r 2^n / u must land in [1, 2)
    while (n > 0 && r * std::exp2(static_cast<double>(n)) / kU >= 2.0) --n;
    while (r * std::exp2(static_cast<double>(n)) / kU < 1.0) ++n;
    const double alpha = r * std::exp2(static_cast<double>(n)) / kU;
    const double cn = c_n(n);
    const double aD = std::pow(alpha, kD);
    const double aD1 = std::pow(alpha, kD - 1.0);
    const double aD2 = std::pow(alpha, kD - 2.0);
    V = std::pow(r, 2.0 - kD) * (0.5 * aD * cn + aD1 * kB + aD2 * kB);
    S = std::pow(r, 1.0 - kD) * (aD * cn + aD1 * kB);
}

inline RadialProfile gasket_profile(const std::vector<double>& radii) {
    RadialProfile p;
    p.radii = radii;
    p.dim = 2;
    p.source = ProfileSource::analytic;
    p.v0 = 0.0;
    p.volume.resize(radii.size());
    p.surface.resize(radii.size());
    for (std::size_t k = 0; k < radii.size(); ++k) {
        if (!(radii[k] > 0.0) || (k > 0 && radii[k] <= radii[k - 1]))
            throw std::invalid_argument("gasket_profile: radii must be positive increasing");
        gasket_exact(radii[k], p.volume[k], p.surface[k]);
    }
    p.surface_deriv = p.surface;
    return p;
}

// The four normalized content constants of the gasket plus the quantities
// they are built from. Values come out of the optimizer below, never out of
// literals, so transcription drift is caught by the tests.
struct GasketOracle {
    double u = 0.0;
    double D = 0.0;
    double b = 0.0;
    double c = 0.0;
    double alpha_max_surface = 0.0;   // argmax of g on [1,2]
    double norm_surface_upper = 0.0;  // kappa_{2-D} * upper S-content
    double norm_surface_lower = 0.0;  // kappa_{2-D} * lower S-content
    double norm_volume_upper = 0.0;   // kappa_{2-D} * upper Minkowski content
    double norm_volume_lower = 0.0;   // kappa_{2-D} * lower Minkowski content
};

namespace gasket_detail {

// Golden-section refinement of an extremum bracketed on [lo, hi].
template <typename F>
double golden_extremum(F f, double lo, double hi, bool maximize, double xtol) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        const bool move_left = maximize ? (f1 > f2) : (f1 < f2);
        if (move_left) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

// Scan + refine so interior and boundary extrema are both found.
template <typename F>
double extremize(F f, bool maximize, double& arg) {
    const int m = 4096;
    int best = 0;
    double bestv = f(1.0);
    for (int i = 1; i <= m; ++i) {
        const double x = 1.0 + static_cast<double>(i) / m;
        const double v = f(x);
        if (maximize ? v > bestv : v < bestv) {
            bestv = v;
            best = i;
        }
    }
    const double lo = 1.0 + static_cast<double>(std::max(0, best - 1)) / m;
    const double hi = 1.0 + static_cast<double>(std::min(m, best + 1)) / m;
    arg = golden_extremum(f, lo, hi, maximize, 1e-10);
    return f(arg);
}

} // namespace gasket_detail

inline GasketOracle gasket_constants() {
    using namespace gasket_detail;
    GasketOracle o;
    o.u = kU;
    o.D = kD;
    o.b = kB;
    o.c = kC;
    const double twoMinusD = 2.0 - kD;
    auto g = [&](double x) { return std::pow(x, kD) * kC + std::pow(x, kD - 1.0) * kB; };
    auto h = [&](double x) {
        return 0.5 * std::pow(x, kD) * kC + std::pow(x, kD - 1.0) * kB +
               std::pow(x, kD - 2.0) * kB;
    };
    double arg = 0.0;
    o.norm_surface_upper = extremize(g, true, arg) / twoMinusD;
    o.alpha_max_surface = arg;
    o.norm_surface_lower = extremize(g, false, arg) / twoMinusD;
    o.norm_volume_upper = extremize(h, true, arg);
    o.norm_volume_lower = extremize(h, false, arg);
    return o;
}

} // namespace parsets
