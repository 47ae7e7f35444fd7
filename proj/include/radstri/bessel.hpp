#pragma once

#include <cmath>

#include "radstri/common.hpp"

namespace radstri {

namespace detail {

/// Ascending series sum_k (-1)^k (x/2)^{nu+2k} / (k! Gamma(nu+k+1)),
/// accumulated in long double. Reliable for x up to ~13 at these orders.
inline double bessel_j_series(double nu, double x) {
    const long double half = 0.5L * static_cast<long double>(x);
    const long double q = half * half;
    long double term = std::pow(half, static_cast<long double>(nu)) /
                       std::tgamma(static_cast<long double>(nu) + 1.0L);
    long double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= -q / (static_cast<long double>(k) * (static_cast<long double>(nu) + k));
        sum += term;
        if (std::abs(static_cast<double>(term)) < 1e-20 * (1.0 + std::abs(static_cast<double>(sum))))
            break;
    }
    return static_cast<double>(sum);
}

/// Hankel asymptotic expansion, terms cut at the smallest one.
inline double bessel_j_asymptotic(double nu, double x) {
    const double mu = 4.0 * nu * nu;
    double p = 1.0, q = 0.0;
    double term = 1.0;
    double prev = std::abs(term);
    for (int k = 1; k <= 30; ++k) {
        term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
        if (std::abs(term) > prev) break;
        prev = std::abs(term);
        const int r = k % 4;
        if (r == 1) q += term;
        else if (r == 2) p -= term;
        else if (r == 3) q -= term;
        else p += term;
    }
    const double chi = x - (0.5 * nu + 0.25) * pi;
    return std::sqrt(2.0 / (pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace detail

/// Bessel function J_nu for the orders the radial Fourier analysis needs:
/// nu = n/2 - 1 with n = 1..7, i.e. -1/2, 0, 1/2, 1, 3/2, 2, 5/2.
/// Half-integer orders use their closed forms away from 0; integer orders use
/// the ascending series below x = 12 and the Hankel expansion beyond.
inline double bessel_j(double nu, double x) {
    if (x < 0) {
        // all orders here satisfy J_nu(-x) = (-1)^nu-parity handling not needed:
        // transforms only evaluate at non-negative arguments
        throw DomainError("bessel_j: negative argument");
    }
    const double series_cut = 12.0;
    if (nu == 0.0 || nu == 1.0 || nu == 2.0) {
        if (x <= series_cut) return detail::bessel_j_series(nu, x);
        return detail::bessel_j_asymptotic(nu, x);
    }
    if (nu == -0.5) {
        // 1/sqrt(x) blowup at 0 is cancelled by the lam^{n/2} transform factor
        if (x <= 0.0) throw DomainError("bessel_j: J_{-1/2} needs x > 0");
        return std::sqrt(2.0 / (pi * x)) * std::cos(x);
    }
    if (nu == 0.5) {
        if (x < 0.5) return detail::bessel_j_series(nu, x);
        return std::sqrt(2.0 / (pi * x)) * std::sin(x);
    }
    if (nu == 1.5) {
        if (x < 0.5) return detail::bessel_j_series(nu, x);
        return std::sqrt(2.0 / (pi * x)) * (std::sin(x) / x - std::cos(x));
    }
    if (nu == 2.5) {
        if (x < 1.0) return detail::bessel_j_series(nu, x);
        return std::sqrt(2.0 / (pi * x)) *
               ((3.0 / (x * x) - 1.0) * std::sin(x) - 3.0 * std::cos(x) / x);
    }
    throw DomainError("bessel_j: order not supported");
}

}  // namespace radstri
