#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "parsets/bessel.hpp"
#include "parsets/brownian.hpp"
#include "parsets/contents.hpp"
#include "parsets/profile.hpp"
#include "parsets/quadrature.hpp"
#include "parsets/shapes.hpp"

namespace parsets {

namespace detail {

struct SausageQuadOptions {
    double cutoff_scale = 1.0; // test hook: doubling it must not move the result
};

// integral I(c) = int_0^inf phi_d(c y^2) / (y^3 (J^2 + Y^2)(y)) dy
inline double sausage_integral(int d, double c, const SausageQuadOptions& opts) {
    const double cutoff = std::max(40.0, std::sqrt(45.0 / c)) * opts.cutoff_scale;
    auto integrand_log = [&](double x) {
        const double y = std::exp(x);
        return phi_d(d, c * y * y) / (y * y * y * bessel_m2(d, y)) * y;
    };

    // the lower cutoff shrinks until its analytic remainder bound is dust
    double y_lo = std::min(1e-3, 1.0 / std::sqrt(c));
    auto lower_remainder = [&](double y) {
        if (d == 3) return std::numbers::pi * c / 6.0 * y;
        const double lg = std::log(y / 2.0);
        return std::numbers::pi * std::numbers::pi * c * c / 16.0 * y * y / (lg * lg);
    };
    double coarse = adaptive_simpson(integrand_log, std::log(y_lo), std::log(cutoff), 1e-6, 24);
    const double tail = (d == 3)
                            ? std::numbers::pi / 2.0 / cutoff
                            : std::numbers::pi / 2.0 *
                                  (1.0 / cutoff + 1.0 / (24.0 * std::pow(cutoff, 3)) -
                                   5.0 / (128.0 * std::pow(cutoff, 5)));
    const double scale = std::abs(coarse) + tail + 1.0 + (d - 2) * (d - 2) * c;
    for (int it = 0; it < 60 && lower_remainder(y_lo) > 1e-12 * scale; ++it) y_lo /= 8.0;
    return adaptive_simpson(integrand_log, std::log(y_lo), std::log(cutoff), 1e-11 * scale, 48) +
           tail;
}

} // namespace detail

// Mean boundary area of the Wiener sausage at radius r and horizon t, by
// adaptive quadrature of the Bessel-integral representation.
inline double mean_sausage_surface(int d, double r, double t,
                                   detail::SausageQuadOptions opts = {}) {
    if (d != 2 && d != 3) throw std::invalid_argument("mean_sausage_surface: d must be 2 or 3");
    if (!(r > 0.0) || !(t > 0.0))
        throw std::invalid_argument("mean_sausage_surface: r and t must be > 0");
    const double c = t / (2.0 * r * r);
    const double I = detail::sausage_integral(d, c, opts);
    return d * kappa(d) * std::pow(r, d - 1) *
           (1.0 + (d - 2) * (d - 2) * c + 4.0 * d / (std::numbers::pi * std::numbers::pi) * I);
}

// Mean sausage volume as the integral of the mean boundary area from 0 to r.
// The d = 2 integrand has an integrable 1/(rho log^2 rho) endpoint; the
// substitution rho = exp(-1/w) flattens it.
inline double mean_sausage_volume(int d, double r, double t) {
    if (d != 2 && d != 3) throw std::invalid_argument("mean_sausage_volume: d must be 2 or 3");
    if (!(r > 0.0) || !(t > 0.0))
        throw std::invalid_argument("mean_sausage_volume: r and t must be > 0");
    if (d == 3) {
        const double lo = 1e-6 * r;
        auto f = [&](double rho) { return mean_sausage_surface(3, rho, t); };
        const double scale = r * (2.0 * std::numbers::pi * t + 4.0 * std::numbers::pi * r * r +
                                  8.0 * r * std::sqrt(2.0 * std::numbers::pi * t));
        return adaptive_simpson(f, lo, r, 1e-9 * scale, 30) + lo * f(lo);
    }
    auto w_part = [&](double upper) { // int_0^upper ES(e^(-1/w)) e^(-1/w) / w^2 dw
        auto f = [&](double w) {
            const double rho = std::exp(-1.0 / w);
            return mean_sausage_surface(2, rho, t) * rho / (w * w);
        };
        const double w_lo = 1e-3 * upper;
        return adaptive_simpson(f, w_lo, upper, 1e-7 * t, 24) + w_lo * f(w_lo);
    };
    if (r < 0.7) return w_part(1.0 / std::log(1.0 / r));
    auto f = [&](double rho) { return mean_sausage_surface(2, rho, t); };
    return w_part(1.0 / std::log(2.0)) + adaptive_simpson(f, 0.5, r, 1e-9 * t, 24);
}

// Grid profile of one sampled trajectory. The path must be sampled densely
// enough that consecutive points sit within r_min/4 of each other.
inline RadialProfile sausage_profile(const BrownianPath& path, const std::vector<double>& radii,
                                     int n_grid) {
    if (radii.empty()) throw std::invalid_argument("sausage_profile: no radii");
    const double r_min = radii.front(), r_max = radii.back();
    double max_step = 0.0;
    for (std::size_t k = 1; k < path.points.size(); ++k) {
        double s2 = 0.0;
        for (int c = 0; c < path.dim; ++c) {
            const double dxc = path.points[k][c] - path.points[k - 1][c];
            s2 += dxc * dxc;
        }
        max_step = std::max(max_step, s2);
    }
    max_step = std::sqrt(max_step);
    if (max_step > 0.25 * r_min)
        throw std::invalid_argument(
            "sausage_profile: path undersampled for the requested radii (max step " +
            std::to_string(max_step) + " > r_min/4 = " + std::to_string(0.25 * r_min) + ")");

    Vec3 lo = path.points.front(), hi = lo;
    for (const auto& p : path.points)
        for (int c = 0; c < path.dim; ++c) {
            lo[c] = std::min(lo[c], p[c]);
            hi[c] = std::max(hi[c], p[c]);
        }
    double span = 0.0;
    for (int c = 0; c < path.dim; ++c) span = std::max(span, hi[c] - lo[c]);
    const double ext = (span + 2.0 * 1.05 * r_max) * (1.0 + 4.0 / n_grid);
    Box bbox;
    for (int c = 0; c < path.dim; ++c) {
        const double mid = 0.5 * (lo[c] + hi[c]);
        bbox.lo[c] = mid - 0.5 * ext;
        bbox.hi[c] = mid + 0.5 * ext;
    }
    const GridSpec grid = make_grid(bbox, n_grid, path.dim);
    const auto mask = mask_from_points(path.points, grid);
    auto profile = sample_profile(exact_edt(mask), radii);
    profile.source = ProfileSource::simulation;
    return profile;
}

struct SausageEnsemble {
    std::vector<double> radii;
    std::vector<double> mean_volume, sd_volume;
    std::vector<double> mean_surface, sd_surface;
    int n_replicas = 0;
};

inline std::uint64_t replica_seed(std::uint64_t seed, int replica) {
    return detail::mix64(seed ^ (0xD1342543DE82EF95ULL * static_cast<std::uint64_t>(replica + 1)));
}

inline SausageEnsemble sausage_ensemble(int dim, double t, int n_steps, int n_grid,
                                        const std::vector<double>& radii, std::uint64_t seed,
                                        int replicas) {
    if (replicas < 1) throw std::invalid_argument("sausage_ensemble: replicas must be >= 1");
    SausageEnsemble out;
    out.radii = radii;
    out.n_replicas = replicas;
    const std::size_t m = radii.size();
    std::vector<double> sv(m, 0.0), svv(m, 0.0), ss(m, 0.0), sss(m, 0.0);
    for (int rep = 0; rep < replicas; ++rep) {
        const auto path = brownian_path(dim, t, n_steps, replica_seed(seed, rep));
        const auto p = sausage_profile(path, radii, n_grid);
        for (std::size_t k = 0; k < m; ++k) {
            sv[k] += p.volume[k];
            svv[k] += p.volume[k] * p.volume[k];
            ss[k] += p.surface[k];
            sss[k] += p.surface[k] * p.surface[k];
        }
    }
    out.mean_volume.resize(m);
    out.sd_volume.resize(m);
    out.mean_surface.resize(m);
    out.sd_surface.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        out.mean_volume[k] = sv[k] / replicas;
        out.mean_surface[k] = ss[k] / replicas;
        const double vv = svv[k] / replicas - out.mean_volume[k] * out.mean_volume[k];
        const double vs = sss[k] / replicas - out.mean_surface[k] * out.mean_surface[k];
        out.sd_volume[k] = std::sqrt(std::max(0.0, vv));
        out.sd_surface[k] = std::sqrt(std::max(0.0, vs));
    }
    return out;
}

// Normalizations of the small-radius laws, emitted as diagnostics. Formula
// columns carry their limits; the almost-sure bounds on simulated data are
// reported with trend indicators and never asserted.
struct AsymptoticTable {
    std::vector<std::string> columns;
    std::vector<double> limits; // NaN where no sharp limit applies
    std::vector<std::vector<double>> rows;
};

inline AsymptoticTable asymptotic_table(int d, const std::vector<double>& radii, double t,
                                        const SausageEnsemble* sim = nullptr) {
    if (d != 2 && d != 3) throw std::invalid_argument("asymptotic_table: d must be 2 or 3");
    AsymptoticTable tab;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double pi = std::numbers::pi;
    tab.columns = {"r", "EV_formula", "ES_formula"};
    tab.limits = {nan, nan, nan};
    if (d == 2) {
        tab.columns.push_back("abslog_r_EV");      // |log r| E V -> pi t
        tab.limits.push_back(pi * t);
        tab.columns.push_back("r_log2_ES");        // r log^2 r E S -> pi t
        tab.limits.push_back(pi * t);
    } else {
        tab.columns.push_back("EV_over_kd2_r");    // E V / (kappa_{d-2} r^{d-2}) -> (d-2) pi t
        tab.limits.push_back((d - 2) * pi * t);
        tab.columns.push_back("ES_over_kd2");      // E S / ((d-2) kappa_{d-2} r^{d-3}) -> (d-2) pi t
        tab.limits.push_back((d - 2) * pi * t);
    }
    if (sim) {
        if (d == 2) {
            tab.columns.insert(tab.columns.end(),
                               {"sim_r_abslog_S", "sim_sqrtlog_S"}); // (p1) <= 2pi, (p2) >= 2pi
            tab.limits.insert(tab.limits.end(), {nan, nan});
        } else {
            tab.columns.insert(tab.columns.end(),
                               {"sim_S_over_kd2", "sim_S_over_kd2_corr"}); // (p3), (p4)
            tab.limits.insert(tab.limits.end(), {nan, nan});
        }
    }
    const double kd2 = kappa(d - 2);
    for (std::size_t k = 0; k < radii.size(); ++k) {
        const double r = radii[k];
        const double EV = mean_sausage_volume(d, r, t);
        const double ES = mean_sausage_surface(d, r, t);
        std::vector<double> row{r, EV, ES};
        if (d == 2) {
            row.push_back(std::abs(std::log(r)) * EV);
            row.push_back(r * std::log(r) * std::log(r) * ES);
        } else {
            row.push_back(EV / (kd2 * std::pow(r, d - 2)));
            row.push_back(ES / ((d - 2) * kd2 * std::pow(r, d - 3)));
        }
        if (sim) {
            double msim = nan;
            for (std::size_t j = 0; j < sim->radii.size(); ++j)
                if (std::abs(sim->radii[j] - r) <= 1e-12 * r) msim = sim->mean_surface[j];
            if (d == 2) {
                row.push_back(r * std::abs(std::log(r)) * msim);
                row.push_back(std::sqrt(std::abs(std::log(r))) * msim);
            } else {
                row.push_back(msim / ((d - 2) * kd2 * std::pow(r, d - 3)));
                row.push_back(msim / ((d - 2) * kd2 * std::pow(r, d - 3.0 - 2.0 / d)));
            }
        }
        tab.rows.push_back(std::move(row));
    }
    return tab;
}

} // namespace parsets
