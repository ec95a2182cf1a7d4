#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace parsets {

namespace detail {

inline constexpr double kEulerGamma = 0.5772156649015328606;

// Ascending series, long double accumulation. Below the crossover the
// alternating-series cancellation costs at most ~6 digits of the 64-bit
// mantissa, keeping the result well inside 1e-12.
inline void bessel_j0y0_series(double y, double& J, double& Y) {
    const long double q = static_cast<long double>(y) * y / 4.0L;
    long double term = 1.0L, sj = 1.0L, sy = 0.0L, harmonic = 0.0L;
    for (int k = 1; k <= 64; ++k) {
        term *= -q / (static_cast<long double>(k) * k);
        harmonic += 1.0L / k;
        sj += term;
        sy += -term * harmonic; // (-1)^(k+1) H_k q^k / (k!)^2
        if (std::abs(static_cast<double>(term)) < 1e-20 * std::abs(static_cast<double>(sj)) &&
            k > 4)
            break;
    }
    J = static_cast<double>(sj);
    const long double ln_half_y = std::log(static_cast<long double>(y) / 2.0L);
    Y = static_cast<double>(
        (2.0L / std::numbers::pi_v<long double>) *
        ((ln_half_y + kEulerGamma) * sj + sy));
}

// Hankel asymptotic expansion: J0 = sqrt(2/(pi y)) (P cos chi - Q sin chi),
// Y0 = sqrt(2/(pi y)) (P sin chi + Q cos chi), chi = y - pi/4. Terms are
// added until they stop shrinking; at the crossover the optimal truncation
// error is below 1e-12.
inline void bessel_j0y0_asymptotic(double y, double& J, double& Y) {
    const long double ey = 8.0L * static_cast<long double>(y);
    long double t = 1.0L, P = 1.0L, Q = 0.0L, prev = 1e30L;
    for (int m = 1; m <= 24; ++m) {
        t *= static_cast<long double>(2 * m - 1) * (2 * m - 1) / (static_cast<long double>(m) * ey);
        if (std::abs(static_cast<double>(t)) > prev) break;
        prev = std::abs(static_cast<double>(t));
        const int k = m / 2;
        if (m % 2 == 1) Q += ((k % 2 == 0) ? -1.0L : 1.0L) * t;
        else P += ((k % 2 == 0) ? 1.0L : -1.0L) * t;
    }
    const long double chi = static_cast<long double>(y) - std::numbers::pi_v<long double> / 4.0L;
    const long double amp = std::sqrt(2.0L / (std::numbers::pi_v<long double> * y));
    const long double c = std::cos(chi), s = std::sin(chi);
    J = static_cast<double>(amp * (P * c - Q * s));
    Y = static_cast<double>(amp * (P * s + Q * c));
}

} // namespace detail

struct BesselJY {
    double J = 0.0;
    double Y = 0.0;
};

// First- and second-kind Bessel values at the orders the mean-surface formula
// needs: nu = 0 (planar case) by series + large-argument asymptotics, and the
// half-integer closed forms for nu = 1/2.
inline BesselJY bessel_jy(double nu, double y) {
    if (!(y > 0.0)) throw std::invalid_argument("bessel_jy: y must be > 0");
    BesselJY out;
    if (nu == 0.5) {
        const double amp = std::sqrt(2.0 / (std::numbers::pi * y));
        out.J = amp * std::sin(y);
        out.Y = -amp * std::cos(y);
        return out;
    }
    if (nu != 0.0) throw std::invalid_argument("bessel_jy: unsupported order (only 0 and 1/2)");
    if (y < 12.0) detail::bessel_j0y0_series(y, out.J, out.Y);
    else detail::bessel_j0y0_asymptotic(y, out.J, out.Y);
    return out;
}

// J^2 + Y^2 at order (d-2)/2, the modulus entering the sausage integrand.
inline double bessel_m2(int d, double y) {
    if (d == 3) return 2.0 / (std::numbers::pi * y);
    const BesselJY b = bessel_jy(0.0, y);
    return b.J * b.J + b.Y * b.Y;
}

// phi_d(z) = 1 - e^-z - 2 z e^-z / d, evaluated without cancellation at 0.
inline double phi_d(int d, double z) {
    if (z < 0.0) throw std::invalid_argument("phi_d: z must be >= 0");
    if (z > 700.0) return 1.0;
    return -std::expm1(-z) - 2.0 * z * std::exp(-z) / d;
}

} // namespace parsets
