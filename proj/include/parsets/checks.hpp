#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "parsets/contents.hpp"
#include "parsets/profile.hpp"

namespace parsets {

struct CheckReport {
    std::string name;
    bool passed = true;
    double worst_residual = -std::numeric_limits<double>::infinity();
    double tolerance = 0.0; // at the worst location
    double location = 0.0;  // radius of the worst residual
    std::size_t n_samples = 0;
    std::vector<std::pair<double, double>> details; // (radius, residual)
};

namespace detail {

inline void finish(CheckReport& rep) {
    rep.passed = rep.worst_residual <= rep.tolerance;
}

// Tracks the single worst margin (residual - tolerance) across comparisons.
struct Worst {
    double margin = -std::numeric_limits<double>::infinity();
    double residual = -std::numeric_limits<double>::infinity();
    double tol = 0.0;
    double loc = 0.0;
    void update(double residual_, double tol_, double loc_) {
        if (residual_ - tol_ > margin) {
            margin = residual_ - tol_;
            residual = residual_;
            tol = tol_;
            loc = loc_;
        }
    }
    void commit(CheckReport& rep) const {
        rep.worst_residual = residual;
        rep.tolerance = tol;
        rep.location = loc;
        finish(rep);
    }
};

// Piecewise-linear interpolation of a monotone column with a curvature-based
// error allowance (second divided differences), so finite sampling does not
// masquerade as an inequality violation.
struct MonotoneInterp {
    const std::vector<double>& x;
    const std::vector<double>& y;
    std::vector<double> slack_cell;

    MonotoneInterp(const std::vector<double>& xs, const std::vector<double>& ys)
        : x(xs), y(ys), slack_cell(xs.size() > 1 ? xs.size() - 1 : 0, 0.0) {
        for (std::size_t k = 0; k + 1 < x.size(); ++k) {
            const double dx1 = x[k + 1] - x[k];
            double curv = 0.0;
            if (k > 0) {
                const double s1 = (y[k + 1] - y[k]) / dx1;
                const double s0 = (y[k] - y[k - 1]) / (x[k] - x[k - 1]);
                curv = std::max(curv, std::abs(s1 - s0));
            }
            if (k + 2 < x.size()) {
                const double s1 = (y[k + 1] - y[k]) / dx1;
                const double s2 = (y[k + 2] - y[k + 1]) / (x[k + 2] - x[k + 1]);
                curv = std::max(curv, std::abs(s2 - s1));
            }
            slack_cell[k] = 0.5 * curv * dx1;
        }
    }

    // value and local interpolation allowance at query point q
    std::pair<double, double> at(double q) const {
        const auto it = std::upper_bound(x.begin(), x.end(), q);
        std::size_t k = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
        if (k + 1 >= x.size()) k = x.size() - 2;
        const double t = (q - x[k]) / (x[k + 1] - x[k]);
        return {y[k] + t * (y[k + 1] - y[k]), slack_cell[k]};
    }
};

inline bool grid_like(const RadialProfile& p) {
    return p.source != ProfileSource::analytic;
}

} // namespace detail

// Kneser inequality of the parallel volume: V(lb) - V(la) <= l^d (V(b) - V(a))
// for a <= b and l >= 1, checked over sampled pairs and l in {1.25, 1.5, 2}.
inline CheckReport check_kneser(const RadialProfile& p) {
    if (p.size() < 3) throw std::invalid_argument("check_kneser: need >= 3 radii");
    CheckReport rep;
    rep.name = "kneser";
    const double d = static_cast<double>(p.dim);
    detail::MonotoneInterp interp(p.radii, p.volume);
    const double cell = detail::grid_like(p) ? std::pow(p.grid_h, p.dim) : 0.0;

    // dense profiles are thinned; the lattice of pairs stays deterministic
    std::vector<std::size_t> idx;
    const std::size_t stride = std::max<std::size_t>(1, p.size() / 192);
    for (std::size_t k = 0; k < p.size(); k += stride) idx.push_back(k);

    detail::Worst worst;
    std::size_t n = 0;
    for (const double lambda : {1.25, 1.5, 2.0}) {
        for (std::size_t ii = 0; ii < idx.size(); ++ii) {
            for (std::size_t jj = ii; jj < idx.size(); ++jj) {
                const double a = p.radii[idx[ii]];
                const double b = p.radii[idx[jj]];
                if (lambda * b > p.radii.back() * (1.0 + 1e-12)) break;
                const auto [vla, sla] = interp.at(lambda * a);
                const auto [vlb, slb] = interp.at(lambda * b);
                const double lhs = vlb - vla;
                const double rhs = std::pow(lambda, d) * (p.volume[idx[jj]] - p.volume[idx[ii]]);
                const double scale = std::max({std::abs(rhs), std::abs(lhs), p.volume.back() * 1e-6});
                const double tol = 1e-9 + 3.0 * (sla + slb + cell) / scale;
                worst.update((lhs - rhs) / scale, tol, b);
                ++n;
            }
        }
    }
    rep.n_samples = n;
    worst.commit(rep);
    return rep;
}

// Monotonicity of r^(1-d) V'(r) (finite-difference form): the scaled surface
// sequence from the derivative estimator must be nonincreasing.
inline CheckReport check_stacho(const RadialProfile& p) {
    if (p.size() < 4) throw std::invalid_argument("check_stacho: need >= 4 radii");
    CheckReport rep;
    rep.name = "stacho-monotonicity";
    const double d = static_cast<double>(p.dim);
    const std::size_t m = p.size();
    std::vector<double> sigma(m), quant(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t a = k == 0 ? 0 : k - 1;
        const std::size_t b = k + 1 == m ? k : k + 1;
        const double dr = p.radii[b] - p.radii[a];
        const double rd1 = std::pow(p.radii[k], d - 1.0);
        sigma[k] = (p.volume[b] - p.volume[a]) / (dr * rd1);
        if (detail::grid_like(p)) {
            // one-cell count granularity plus a boundary-layer allowance of
            // one cell width on each volume read
            const double cell = std::pow(p.grid_h, p.dim);
            const double band = p.grid_h * std::max(p.surface[b], p.surface[a]);
            quant[k] = (2.0 * cell + band) / (dr * rd1);
        }
    }
    detail::Worst worst;
    for (std::size_t k = 0; k + 1 < m; ++k) {
        const double scale = std::max(std::abs(sigma[k]), std::abs(sigma[k + 1]));
        if (!(scale > 0.0)) continue;
        const double tol = 1e-9 + 3.0 * (quant[k] + quant[k + 1]) / scale;
        worst.update((sigma[k + 1] - sigma[k]) / scale, tol, p.radii[k + 1]);
        rep.details.emplace_back(p.radii[k + 1], (sigma[k + 1] - sigma[k]) / scale);
    }
    rep.n_samples = m;
    worst.commit(rep);
    return rep;
}

// l'Hospital-type sandwich against the gauge h(t) = kappa_{d-s} t^(d-s):
// the windowed volume ratio must sit between the extremes of S(t)/h'(t).
inline CheckReport check_sandwich(const RadialProfile& p, double s) {
    const double d = static_cast<double>(p.dim);
    if (!(s < d)) throw std::invalid_argument("check_sandwich: gauge needs s < dim");
    if (s < 0.0) throw std::invalid_argument("check_sandwich: s must be >= 0");
    CheckReport rep;
    rep.name = "sandwich";
    const auto f = normalized_series(p, s, ContentKind::surface).values;
    const auto ratio = normalized_series(p, s, ContentKind::volume).values;
    const double base = detail::grid_like(p) ? 0.02 : 1e-9;

    detail::Worst worst;
    double fmin = f[0], fmax = f[0], step = 0.0;
    std::size_t assessed = 0;
    for (std::size_t k = 1; k < p.size(); ++k) {
        step = std::max(step, std::abs(f[k] - f[k - 1]));
        fmin = std::min(fmin, f[k]);
        fmax = std::max(fmax, f[k]);
        // need a couple of octaves of resolved t below r for the extremes
        if (p.radii[k] < 4.0 * p.radii.front()) continue;
        const double scale = std::max(std::abs(ratio[k]), 1e-300);
        const double tol = base + step / scale;
        worst.update((ratio[k] - fmax) / scale, tol, p.radii[k]);
        worst.update((fmin - ratio[k]) / scale, tol, p.radii[k]);
        ++assessed;
    }
    if (assessed == 0) throw std::invalid_argument("check_sandwich: profile too short");
    rep.n_samples = assessed;
    worst.commit(rep);
    return rep;
}

// Integral identity linking the volume and surface normalized series,
// v(t) = w(t) + (V(t)-V(0))/((d-s) kappa_{d-s} t^(d-s)) - (V(1)-V(0))/((d-s) kappa_{d-s}),
// on the profile rescaled so its largest radius is 1.
inline CheckReport check_vw_identity(const RadialProfile& p, double s, double t,
                                     double tolerance = 1e-3) {
    const double d = static_cast<double>(p.dim);
    if (!(s < d)) throw std::invalid_argument("check_vw_identity: s must be < dim");
    CheckReport rep;
    rep.name = "vw-identity";
    rep.tolerance = tolerance;

    std::size_t ti = p.size();
    for (std::size_t k = 0; k < p.size(); ++k)
        if (std::abs(p.radii[k] - t) <= 1e-9 * t) ti = k;
    if (ti == p.size())
        throw std::invalid_argument("check_vw_identity: t must be one of the profile radii");

    const double lam = 1.0 / p.radii.back();
    const double ld = std::pow(lam, d);
    std::vector<double> r(p.size()), vol(p.size()), sur(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        r[k] = lam * p.radii[k];
        vol[k] = ld * (p.volume[k] - p.v0);
        sur[k] = std::pow(lam, d - 1.0) * p.surface[k];
    }
    const double kap = kappa(d - s);
    auto vints = [&](std::size_t from) {
        double v = 0.0, w = 0.0;
        for (std::size_t k = from; k + 1 < r.size(); ++k) {
            const double dlr = std::log(r[k + 1] / r[k]);
            const double fv0 = vol[k] / (kap * std::pow(r[k], d - s));
            const double fv1 = vol[k + 1] / (kap * std::pow(r[k + 1], d - s));
            const double fw0 = sur[k] / ((d - s) * kap * std::pow(r[k], d - s - 1.0));
            const double fw1 = sur[k + 1] / ((d - s) * kap * std::pow(r[k + 1], d - s - 1.0));
            v += 0.5 * (fv0 + fv1) * dlr;
            w += 0.5 * (fw0 + fw1) * dlr;
        }
        return std::make_pair(v, w);
    };
    const auto [v, w] = vints(ti);
    const double tt = r[ti];
    const double second = vol[ti] / ((d - s) * kap * std::pow(tt, d - s));
    const double third = vol.back() / ((d - s) * kap);
    const double resid = std::abs(v - w - second + third) / std::max(std::abs(v), 1e-300);
    rep.worst_residual = resid;
    rep.location = t;
    rep.n_samples = p.size() - ti;
    detail::finish(rep);
    return rep;
}

// Isoperimetric control: d kappa_d^(1/d) V(r)^((d-1)/d) <= S(r).
inline CheckReport check_isoperimetric(const RadialProfile& p) {
    CheckReport rep;
    rep.name = "isoperimetric";
    const double d = static_cast<double>(p.dim);
    const double coef = d * std::pow(kappa(d), 1.0 / d);
    const double tol = detail::grid_like(p) ? 0.02 : 1e-12;
    detail::Worst worst;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double lhs = coef * std::pow(p.volume[k], (d - 1.0) / d);
        const double resid = (lhs - p.surface[k]) / p.surface[k];
        worst.update(resid, tol, p.radii[k]);
        rep.details.emplace_back(p.radii[k], resid);
    }
    rep.n_samples = p.size();
    worst.commit(rep);
    return rep;
}

// Window form of the upper-content comparison: sup of the volume-normalized
// series dominates (d-s)/d times the sup of the surface-normalized series.
inline CheckReport check_lm34(const RadialProfile& p, double s) {
    const double d = static_cast<double>(p.dim);
    if (!(s < d)) throw std::invalid_argument("check_lm34: s must be < dim");
    CheckReport rep;
    rep.name = "lm34";
    const Window w = default_window(p);
    const auto bv = content_bounds(p, s, ContentKind::volume, w);
    const auto bs = content_bounds(p, s, ContentKind::surface, w);
    const double lhs = bv.upper;
    const double rhs = (d - s) / d * bs.upper;
    rep.tolerance = detail::grid_like(p) ? 0.02 : 1e-9;
    rep.worst_residual = (rhs - lhs) / std::max(std::abs(lhs), 1e-300);
    rep.location = w.r_hi;
    rep.n_samples = p.size();
    detail::finish(rep);
    return rep;
}

} // namespace parsets
