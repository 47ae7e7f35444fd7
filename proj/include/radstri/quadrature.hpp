#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <span>
#include <vector>

#include "radstri/common.hpp"

namespace radstri {

// ---------------------------------------------------------------------------
// Gauss-Legendre rules on [-1, 1], cached per order.
// ---------------------------------------------------------------------------

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline GaussRule compute_gauss_legendre(int m) {
    GaussRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    const int half = (m + 1) / 2;
    for (int i = 1; i <= half; ++i) {
        // Newton iteration from the Chebyshev-angle initial guess.
        double z = std::cos(pi * (i - 0.25) / (m + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= m; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = m * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        rule.nodes[i - 1] = -z;
        rule.nodes[m - i] = z;
        rule.weights[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[m - i] = rule.weights[i - 1];
    }
    return rule;
}

inline const GaussRule& gauss_legendre(int m) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, compute_gauss_legendre(m)).first;
    return it->second;
}

// ---------------------------------------------------------------------------
// Panel decompositions of an interval.
// ---------------------------------------------------------------------------

struct Panel {
    double a;
    double b;
};

inline std::vector<Panel> uniform_panels(double a, double b, int count) {
    std::vector<Panel> out;
    out.reserve(count);
    const double h = (b - a) / count;
    for (int k = 0; k < count; ++k) out.push_back({a + k * h, a + (k + 1) * h});
    out.back().b = b;
    return out;
}

/// Geometric refinement of [a, b] toward one endpoint. The panel nearest the
/// refined end has width ~ (b-a) * ratio^levels; that stub is included as a
/// final panel, so the decomposition covers [a, b] exactly. Grading stops at
/// the rounding floor of the refined endpoint so no panel collapses.
inline std::vector<Panel> graded_panels(double a, double b, bool toward_b, double ratio, int levels) {
    std::vector<Panel> out;
    out.reserve(levels + 1);
    const double len = b - a;
    const double end = toward_b ? b : a;
    const double floor_w = std::max(std::abs(end), len) * 256.0 * 2.220446049250313e-16;
    double cut = len;
    for (int k = 0; k < levels; ++k) {
        const double next = cut * ratio;
        if (next <= floor_w) break;
        if (toward_b)
            out.push_back({b - cut, b - next});
        else
            out.push_back({a + next, a + cut});
        cut = next;
    }
    if (toward_b)
        out.push_back({b - cut, b});
    else
        out.push_back({a, a + cut});
    if (!toward_b) std::reverse(out.begin(), out.end());
    return out;
}

inline void append_panels(std::vector<Panel>& dst, const std::vector<Panel>& src) {
    dst.insert(dst.end(), src.begin(), src.end());
}

/// Splits [a, b] at the given interior points (points outside are ignored).
inline std::vector<Panel> panels_split_at(double a, double b, std::span<const double> points) {
    std::vector<double> cuts{a, b};
    for (double p : points)
        if (p > a && p < b) cuts.push_back(p);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Panel> out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) out.push_back({cuts[i], cuts[i + 1]});
    return out;
}

/// Subdivides every panel wider than max_width.
inline std::vector<Panel> enforce_max_width(const std::vector<Panel>& panels, double max_width) {
    std::vector<Panel> out;
    for (const Panel& p : panels) {
        const double w = p.b - p.a;
        if (w <= max_width) {
            out.push_back(p);
        } else {
            const int k = static_cast<int>(std::ceil(w / max_width));
            append_panels(out, uniform_panels(p.a, p.b, k));
        }
    }
    return out;
}

template <class F>
double integrate_panel(F&& f, double a, double b, int order) {
    const GaussRule& rule = gauss_legendre(order);
    const double mid = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k)
        sum += rule.weights[k] * f(mid + hl * rule.nodes[k]);
    return sum * hl;
}

template <class F>
double integrate(F&& f, const std::vector<Panel>& panels, int order) {
    double sum = 0.0;
    for (const Panel& p : panels) sum += integrate_panel(f, p.a, p.b, order);
    return sum;
}

// ---------------------------------------------------------------------------
// Integrals with an algebraic endpoint singularity |x - c|^e, e > -1.
// Geometric grading toward the singular point plus an analytic stub for the
// innermost sliver keeps the error small even for e close to -1.
// ---------------------------------------------------------------------------

struct SingularOptions {
    double ratio = 0.3;
    int levels = 54;
    int order = 14;
};

/// Computes int_c^d f(x) (x - c)^e dx for d > c, e > -1, f smooth on [c, d].
/// Geometric grading toward c; the innermost sliver, where f is locally
/// constant, is integrated analytically, so the grading depth only has to
/// reach the scale where f stops varying.
template <class F>
double singular_endpoint_integral(F&& f, double c, double d, double e, const SingularOptions& opt = {}) {
    const double len = d - c;
    if (len <= 0.0) return 0.0;
    double sum = 0.0;
    auto g = [&](double x) { return f(x) * std::pow(x - c, e); };
    const double floor_w = std::max(std::abs(c), len) * 256.0 * 2.220446049250313e-16;
    double cut = len;
    for (int k = 0; k < opt.levels; ++k) {
        const double next = cut * opt.ratio;
        if (next <= floor_w) break;
        sum += integrate_panel(g, c + next, c + cut, opt.order);
        cut = next;
    }
    sum += f(c + 0.5 * cut) * std::pow(cut, e + 1.0) / (e + 1.0);
    return sum;
}

/// Computes int_a^b f(x) |x - c|^e dx where c may lie inside [a, b].
template <class F>
double singular_power_integral(F&& f, double a, double b, double c, double e,
                               const SingularOptions& opt = {}) {
    if (b <= a) return 0.0;
    if (c > a && c < b) {
        // Left half reflected about c so both halves end at the singularity.
        return singular_endpoint_integral([&](double u) { return f(2.0 * c - u); }, c, 2.0 * c - a, e, opt) +
               singular_endpoint_integral(f, c, b, e, opt);
    }
    if (c == a) return singular_endpoint_integral(f, c, b, e, opt);
    if (c == b) return singular_endpoint_integral([&](double u) { return f(2.0 * c - u); }, c, 2.0 * c - a, e, opt);
    // c outside [a, b]: the integrand is smooth there; grade toward the near end.
    auto g = [&](double x) { return f(x) * std::pow(std::abs(x - c), e); };
    const std::vector<Panel> panels = graded_panels(a, b, c > b, 0.35, 24);
    return integrate(g, panels, opt.order);
}

// ---------------------------------------------------------------------------
// Double-endpoint inverse-square-root integrals
//   int_a^b f(rho) / sqrt((rho^2 - a^2)(b^2 - rho^2)) drho .
// The substitution rho(th)^2 = a^2 + (b^2 - a^2) cos^2(th/2) turns the
// singular factor into the exact Chebyshev weight:
//   = 1/2 int_0^pi f(rho(th)) / rho(th) dth ,
// evaluated at Chebyshev angles (midpoint rule in th), with no endpoint
// evaluations. Canonical check: f(rho) = 2 rho gives exactly pi.
// ---------------------------------------------------------------------------

template <class F>
double chebyshev_singular_integral(F&& f, double a, double b, int npts = 64) {
    if (!(0.0 <= a && a < b)) throw DomainError("chebyshev_singular_integral: need 0 <= a < b");
    const double a2 = a * a, span = b * b - a * a;
    double sum = 0.0;
    for (int k = 0; k < npts; ++k) {
        const double th = pi * (k + 0.5) / npts;
        const double ch = std::cos(0.5 * th);
        const double rho = std::sqrt(a2 + span * ch * ch);
        sum += f(rho) / rho;
    }
    return 0.5 * sum * pi / npts;
}

// ---------------------------------------------------------------------------
// Least-squares line fit (used for growth-table slopes).
// ---------------------------------------------------------------------------

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw InputError("fit_line: need >= 2 matching samples");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) { sx += x[i]; sy += y[i]; }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

}  // namespace radstri
