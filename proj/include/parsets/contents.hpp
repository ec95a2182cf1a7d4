#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "parsets/profile.hpp"

namespace parsets {

// kappa_t = pi^(t/2) / Gamma(1 + t/2); for integer t the unit t-ball volume.
inline double kappa(double t) {
    if (t < 0.0) throw std::invalid_argument("kappa: t must be >= 0");
    return std::pow(std::numbers::pi, 0.5 * t) / std::tgamma(1.0 + 0.5 * t);
}

enum class ContentKind { volume, surface };

struct NormalizedSeries {
    std::vector<double> values; // aligned with profile radii
    bool zero_by_convention = false; // surface kind at s = d
};

// Volume kind: (V(r) - V(0)) / (kappa_{d-s} r^{d-s}); the v0 subtraction is
// applied unconditionally so full-dimensional sets get their outer content.
// Surface kind: S(r) / ((d-s) kappa_{d-s} r^{d-1-s}), zero at s = d.
inline NormalizedSeries normalized_series(const RadialProfile& p, double s, ContentKind kind) {
    const double d = static_cast<double>(p.dim);
    if (s > d + 1e-12) throw std::invalid_argument("normalized_series: s must be <= dim");
    if (s < 0.0) throw std::invalid_argument("normalized_series: s must be >= 0");
    NormalizedSeries out;
    out.values.resize(p.size());
    if (kind == ContentKind::surface && s > d - 1e-12) {
        out.zero_by_convention = true;
        std::fill(out.values.begin(), out.values.end(), 0.0);
        return out;
    }
    const double kap = kappa(d - s);
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double r = p.radii[k];
        if (kind == ContentKind::volume)
            out.values[k] = (p.volume[k] - p.v0) / (kap * std::pow(r, d - s));
        else
            out.values[k] = p.surface[k] / ((d - s) * kap * std::pow(r, d - 1.0 - s));
    }
    return out;
}

struct Window {
    double r_lo = 0.0;
    double r_hi = 0.0;
};

// Smallest decade of resolved radii: the finite-scale stand-in for r -> 0.
inline Window default_window(const RadialProfile& p) {
    const double lo = p.radii.front();
    return {lo, std::min(10.0 * lo, p.radii.back())};
}

struct DimensionFit {
    double dim = 0.0;
    double slope = 0.0;
    double r_squared = 0.0;
    double max_residual = 0.0; // max |log deviation| from the fit line
    std::size_t n_samples = 0;
};

// Least-squares slope of log(V - v0) (resp. log S) against log r.
inline DimensionFit estimate_dimension(const RadialProfile& p, ContentKind kind,
                                       const Window& w) {
    const double d = static_cast<double>(p.dim);
    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double r = p.radii[k];
        if (r < w.r_lo * (1.0 - 1e-12) || r > w.r_hi * (1.0 + 1e-12)) continue;
        const double q = kind == ContentKind::volume ? p.volume[k] - p.v0 : p.surface[k];
        if (!(q > 0.0)) continue;
        xs.push_back(std::log(r));
        ys.push_back(std::log(q));
    }
    const std::size_t m = xs.size();
    if (m < 8) throw std::invalid_argument("estimate_dimension: need >= 8 usable samples");
    if (xs.back() - xs.front() < 2.0 * std::log(2.0) - 1e-9)
        throw std::invalid_argument("estimate_dimension: window must span >= 2 octaves");
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t k = 0; k < m; ++k) {
        sx += xs[k];
        sy += ys[k];
        sxx += xs[k] * xs[k];
        sxy += xs[k] * ys[k];
        syy += ys[k] * ys[k];
    }
    const double den = m * sxx - sx * sx;
    if (!(den > 0.0)) throw std::invalid_argument("estimate_dimension: degenerate fit");
    DimensionFit fit;
    fit.n_samples = m;
    fit.slope = (m * sxy - sx * sy) / den;
    const double intercept = (sy - fit.slope * sx) / m;
    double ss_res = 0.0, ss_tot = 0.0;
    const double ybar = sy / m;
    for (std::size_t k = 0; k < m; ++k) {
        const double e = ys[k] - (intercept + fit.slope * xs[k]);
        ss_res += e * e;
        ss_tot += (ys[k] - ybar) * (ys[k] - ybar);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    for (std::size_t k = 0; k < m; ++k)
        fit.max_residual = std::max(fit.max_residual,
                                    std::abs(ys[k] - (intercept + fit.slope * xs[k])));
    fit.dim = kind == ContentKind::volume ? d - fit.slope : d - 1.0 - fit.slope;
    return fit;
}

inline DimensionFit estimate_dimension(const RadialProfile& p, ContentKind kind) {
    return estimate_dimension(p, kind, {p.radii.front(), p.radii.back()});
}

struct ContentEstimate {
    double s = 0.0;
    ContentKind kind = ContentKind::volume;
    double lower = 0.0;   // inf of the normalized series over the window
    double upper = 0.0;   // sup over the window
    double average = std::numeric_limits<double>::quiet_NaN(); // Cesaro value
    Window window;
    DimensionFit dim_fit;
    bool has_dim_fit = false;
};

inline ContentEstimate content_bounds(const RadialProfile& p, double s, ContentKind kind,
                                      const Window& w) {
    const auto series = normalized_series(p, s, kind);
    ContentEstimate est;
    est.s = s;
    est.kind = kind;
    est.window = w;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    std::size_t m = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double r = p.radii[k];
        if (r < w.r_lo * (1.0 - 1e-12) || r > w.r_hi * (1.0 + 1e-12)) continue;
        lo = std::min(lo, series.values[k]);
        hi = std::max(hi, series.values[k]);
        ++m;
    }
    if (m < 8) throw std::invalid_argument("content_bounds: window must contain >= 8 samples");
    est.lower = lo;
    est.upper = hi;
    try {
        est.dim_fit = estimate_dimension(p, kind, w);
        est.has_dim_fit = true;
    } catch (const std::invalid_argument&) {
        est.has_dim_fit = false;
    }
    return est;
}

inline ContentEstimate content_bounds(const RadialProfile& p, double s, ContentKind kind) {
    return content_bounds(p, s, kind, default_window(p));
}

// Cesaro average (1/|log t|) int_t^1 (normalized series) dlog r, reported at
// the smallest sampled t; trapezoid in log r over the whole profile.
inline double average_content(const RadialProfile& p, double s, ContentKind kind) {
    if (p.size() < 2) throw std::invalid_argument("average_content: need >= 2 samples");
    const double span = std::log(p.radii.back() / p.radii.front());
    if (span < 3.0 * std::log(2.0) - 1e-9)
        throw std::invalid_argument("average_content: profile must span >= 3 octaves");
    const auto series = normalized_series(p, s, kind);
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < p.size(); ++k) {
        const double dlr = std::log(p.radii[k + 1] / p.radii[k]);
        acc += 0.5 * (series.values[k] + series.values[k + 1]) * dlr;
    }
    return acc / span;
}

} // namespace parsets
