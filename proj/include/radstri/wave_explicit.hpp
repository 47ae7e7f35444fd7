#pragma once

#include <algorithm>
#include <cmath>

#include "radstri/norms.hpp"
#include "radstri/polynomials.hpp"
#include "radstri/quadrature.hpp"

namespace radstri {

// ---------------------------------------------------------------------------
// Explicit spatial-domain solution of  box u = 0, u(0) = 0, u_t(0) = g,
// for radial g(x) = psi(|x|) supported in [0, R].
//
// Odd n = 2m+1:
//   u(t,r) = (1/(2 r^m)) int_{|r-t|}^{r+t} lam^m psi(lam)
//              P_{m-1}((lam^2 + r^2 - t^2)/(2 r lam)) dlam .
//
// Even n = 2m (valid for r > t):
//   u(t,r) = (2/(pi r^{m-1})) int_{r-t}^{r+t} lam^m psi(lam) dlam
//              int_{|r-lam|}^{t} rho T_{m-1}((lam^2+r^2-rho^2)/(2 r lam))
//                / (sqrt(G(rho,r,lam)) sqrt(t^2-rho^2)) drho ,
//   G(rho,r,lam) = (rho^2-(r-lam)^2)((r+lam)^2-rho^2).
//
// The even-n rho-integral carries the double inverse-square-root endpoint
// pair (rho^2-a^2)(t^2-rho^2); the Chebyshev substitution absorbs it exactly
// (G factors like the beta-function identity), leaving the smooth factor
// T_{m-1}(z)/sqrt((r+lam)^2-rho^2).
// ---------------------------------------------------------------------------

struct WaveExplicitOptions {
    int lambda_order = 8;
    int lambda_panels = 12;
    int cheb_points = 48;
};

inline double wave_explicit_at(const RadialProfile& g, double t, double r,
                               const WaveExplicitOptions& opt = {}) {
    const int n = g.dim();
    if (n < 2) throw DomainError("wave_explicit: dimension must be >= 2");
    if (!(t > 0.0) || !(r > 0.0)) throw DomainError("wave_explicit: need t > 0, r > 0");
    const double R = g.tail_radius();
    const bool odd = (n % 2) == 1;
    const int m = odd ? (n - 1) / 2 : n / 2;
    if (!odd && r <= t)
        throw RegionError("wave_explicit: even-dimension representation requires r > t");

    const double lo = std::max(std::abs(r - t), 0.0);
    const double hi = std::min(R, r + t);
    if (hi <= lo) return 0.0;

    std::vector<Panel> panels;
    for (const Panel& seg : panels_split_at(lo, hi, g.breakpoints()))
        append_panels(panels, uniform_panels(seg.a, seg.b, opt.lambda_panels));

    if (odd) {
        auto f = [&](double lam) {
            const double pv = g(lam);
            if (pv == 0.0) return 0.0;
            const double z = std::clamp((lam * lam + r * r - t * t) / (2.0 * r * lam), -1.0, 1.0);
            return std::pow(lam, m) * pv * legendre(m - 1, z);
        };
        return integrate(f, panels, opt.lambda_order) / (2.0 * std::pow(r, m));
    }

    auto f = [&](double lam) {
        const double pv = g(lam);
        if (pv == 0.0) return 0.0;
        const double a = std::abs(r - lam);
        if (a >= t) return 0.0;
        const double rl2 = (r + lam) * (r + lam);
        auto inner = [&](double rho) {
            const double z = std::clamp((lam * lam + r * r - rho * rho) / (2.0 * r * lam), -1.0, 1.0);
            return rho * tschebyscheff(m - 1, z) / std::sqrt(rl2 - rho * rho);
        };
        return std::pow(lam, m) * pv * chebyshev_singular_integral(inner, a, t, opt.cheb_points);
    };
    return 2.0 / (pi * std::pow(r, m - 1)) * integrate(f, panels, opt.lambda_order);
}

/// Solution profile at time t on the given grid. Even dimensions are computed
/// only on r > t; nodes with r <= t raise RegionError unless `clip_even` is
/// set, in which case they are dropped from the output.
inline RadialProfile wave_explicit(const RadialProfile& g, double t, const RadialGrid& grid,
                                   const WaveExplicitOptions& opt = {}) {
    const int n = g.dim();
    const bool odd = (n % 2) == 1;
    std::vector<double> nodes;
    for (double r : grid.nodes()) {
        if (!odd && r <= t) throw RegionError("wave_explicit: grid reaches into r <= t");
        nodes.push_back(r);
    }
    std::vector<double> vals(nodes.size());
    parallel_for(nodes.size(), [&](std::size_t i) { vals[i] = wave_explicit_at(g, t, nodes[i], opt); });
    return RadialProfile::sampled(n, std::move(nodes), std::move(vals));
}

/// Both sides of the pointwise lower bound
///   u(t,r) >= (1/(4 r^{(n-1)/2})) int_{r-t}^{min(R, r+t)} lam^{(n-1)/2} psi dlam
/// on the band R/(1+delta) <= r-t <= R, t > 0; the caller checks
/// u >= bound - 1e-10.
struct LowerBoundSides {
    double u;
    double bound;
    bool passes() const { return u >= bound - 1e-10; }
};

inline LowerBoundSides lemma41_lower_bound_check(const RadialProfile& g, double t, double r,
                                                 double delta, const WaveExplicitOptions& opt = {}) {
    const int n = g.dim();
    const double R = g.tail_radius();
    if (!(t > 0.0)) throw RegionError("lemma41: t must be positive");
    if (!(r - t >= R / (1.0 + delta) - 1e-12 && r - t <= R + 1e-12))
        throw RegionError("lemma41: (t, r) outside the band R/(1+delta) <= r-t <= R");
    const int m = (n % 2 == 1) ? (n - 1) / 2 : n / 2;
    if (delta > delta_threshold(m) + 1e-12)
        throw DomainError("lemma41: delta exceeds the polynomial threshold for this dimension");
    for (double lam : {0.1 * R, 0.5 * R, 0.9 * R})
        if (g(lam) < 0.0) throw DomainError("lemma41: data must be non-negative");

    LowerBoundSides out{};
    out.u = wave_explicit_at(g, t, r, opt);
    const double lo = r - t, hi = std::min(R, r + t);
    const double ex = 0.5 * (n - 1.0);
    double integral = 0.0;
    if (hi > lo) {
        std::vector<Panel> panels;
        for (const Panel& seg : panels_split_at(lo, hi, g.breakpoints()))
            append_panels(panels, uniform_panels(seg.a, seg.b, 8));
        integral = integrate([&](double lam) { return std::pow(lam, ex) * g(lam); }, panels, 10);
    }
    out.bound = integral / (4.0 * std::pow(r, ex));
    return out;
}

}  // namespace radstri
