#pragma once

#include <algorithm>
#include <cmath>

#include "radstri/common.hpp"

namespace radstri {

struct PolynomialKind {
    enum class Family { legendre, tschebyscheff };
    Family family = Family::legendre;
    int degree = 0;
};

/// P_k / T_k on [-1, 1] via the three-term recurrences. Degrees above 60 are
/// rejected (recurrence-stable range).
inline double orthogonal_polynomial(PolynomialKind kind, double z) {
    if (std::abs(z) > 1.0 + 1e-14) throw DomainError("orthogonal_polynomial: |z| must be <= 1");
    z = std::clamp(z, -1.0, 1.0);
    const int k = kind.degree;
    if (k < 0 || k > 60) throw DomainError("orthogonal_polynomial: degree must be in [0, 60]");
    if (k == 0) return 1.0;
    if (kind.family == PolynomialKind::Family::legendre) {
        double pm1 = 1.0, p = z;
        for (int j = 2; j <= k; ++j) {
            const double next = ((2.0 * j - 1.0) * z * p - (j - 1.0) * pm1) / j;
            pm1 = p;
            p = next;
        }
        return p;
    }
    double tm1 = 1.0, t = z;
    for (int j = 2; j <= k; ++j) {
        const double next = 2.0 * z * t - tm1;
        tm1 = t;
        t = next;
    }
    return t;
}

inline double legendre(int k, double z) {
    return orthogonal_polynomial({PolynomialKind::Family::legendre, k}, z);
}

inline double tschebyscheff(int k, double z) {
    return orthogonal_polynomial({PolynomialKind::Family::tschebyscheff, k}, z);
}

/// Largest delta (capped at 1) such that both P_{m-1} and T_{m-1} stay >= 1/2
/// on [1/(1+delta), 1]. Found by bisection on delta with a fine grid minimum;
/// the cap keeps the usable band [R/(1+delta), R] no wider than [R/2, R].
inline double delta_threshold(int m) {
    if (m < 1 || m > 30) throw DomainError("delta_threshold: m must be in [1, 30]");
    const int k = m - 1;
    auto ok = [&](double delta) {
        const double z0 = 1.0 / (1.0 + delta);
        const int grid = 4000;
        for (int i = 0; i <= grid; ++i) {
            const double z = z0 + (1.0 - z0) * i / grid;
            if (legendre(k, z) < 0.5 || tschebyscheff(k, z) < 0.5) return false;
        }
        return true;
    };
    if (ok(1.0)) return 1.0;
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace radstri
