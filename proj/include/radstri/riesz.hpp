#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "radstri/norms.hpp"
#include "radstri/report.hpp"

namespace radstri {

// ---------------------------------------------------------------------------
// The kernel h(rho, lambda; r) = 1 - ((r^2 + lambda^2 - rho^2) / (2 lambda r))^2
// of the radial reduction. Non-negative exactly on |r-lambda| <= rho <= r+lambda,
// and h(rho,lambda;r) = (rho^2/lambda^2) h(lambda,rho;r).
// ---------------------------------------------------------------------------

inline double h_kernel(double rho, double lam, double r) {
    const double c = (r * r + lam * lam - rho * rho) / (2.0 * lam * r);
    return 1.0 - c * c;
}

// ---------------------------------------------------------------------------
// Riesz potentials of radial functions.
//
// (T_{n-s} v)(r) = (|S^{n-2}|/r) int_0^inf lam^{n-2} w(lam)
//                    int_{|r-lam|}^{r+lam} rho^{-n+s+1} h^{(n-3)/2} drho dlam.
//
// The inner integral is evaluated in closed form for n = 3 (h^0 = 1) and via
// the substitution rho(th)^2 = (r-lam)^2 + 4 lam r cos^2(th/2) otherwise:
//
//   inner = lam r int_0^pi rho(th)^{s-n} sin^{n-2}(th) dth .
//
// For n = 2 this substitution absorbs the inverse-square-root endpoint factor
// exactly (Chebyshev weight); the remaining integrand is smooth in th except
// for a peak of width ~ |r-lam|/sqrt(lam r) at th = pi, resolved by panels
// graded toward pi.
// ---------------------------------------------------------------------------

struct RieszOptions {
    int theta_order = 8;
    double theta_ratio = 0.35;
    int lambda_order = 8;
    double lambda_ratio = 0.16;
    int lambda_levels = 46;   // geometric grading depth toward lam = r
    int base_panels = 24;     // smooth-region panel count per segment
};

namespace detail {

inline std::vector<Panel> theta_panels(double peak_scale, double ratio) {
    std::vector<Panel> p = uniform_panels(0.0, 0.5 * pi, 4);
    const double target = std::clamp(0.25 * peak_scale, 1e-60, 0.25 * pi);
    int levels = static_cast<int>(std::ceil(std::log((0.5 * pi) / target) / std::log(1.0 / ratio)));
    levels = std::clamp(levels, 6, 140);
    append_panels(p, graded_panels(0.5 * pi, pi, true, ratio, levels));
    return p;
}

}  // namespace detail

inline double riesz_inner_integral(int n, double s, double r, double lam, const RieszOptions& opt = {}) {
    const double a = std::abs(r - lam), b = r + lam;
    if (a <= 0.0) throw DomainError("riesz_inner_integral: lam == r not evaluable");
    if (n == 3) {
        if (s == 1.0) return std::log(b / a);
        return (std::pow(b, s - 1.0) - std::pow(a, s - 1.0)) / (s - 1.0);
    }
    const double a2 = a * a, four_lr = 4.0 * lam * r;
    const double half_power = 0.5 * (s - n);
    auto f = [&](double th) {
        const double c = std::cos(0.5 * th);
        const double rho2 = a2 + four_lr * c * c;
        double v = std::pow(rho2, half_power);
        if (n != 2) v *= std::pow(std::sin(th), n - 2);
        return v;
    };
    const double peak = a / std::sqrt(lam * r);
    return lam * r * integrate(f, detail::theta_panels(peak, opt.theta_ratio), opt.theta_order);
}

/// (T_gamma v)(x) at |x| = r for radial v(x) = w(|x|).
inline double riesz_radial_at(const RadialProfile& w, double gamma, double r,
                              const RieszOptions& opt = {}) {
    const int n = w.dim();
    if (n < 2) throw DomainError("riesz_radial: dimension must be >= 2");
    if (!(gamma > 0.0 && gamma < n)) throw DomainError("riesz_radial: gamma must be in (0, n)");
    if (!(r > 0.0)) throw DomainError("riesz_radial: radius must be positive");
    const double s = n - gamma;
    const double R = norm_truncation_radius(w, 1.0);
    if (!(R > 0.0) || w.amplitude() == 0.0) return 0.0;

    std::vector<double> cuts = w.breakpoints();
    if (r < R) cuts.push_back(r);
    auto f = [&](double lam) {
        const double wl = w(lam);
        if (wl == 0.0) return 0.0;
        return std::pow(lam, n - 2) * wl * riesz_inner_integral(n, s, r, lam, opt);
    };

    double total = 0.0;
    for (const Panel& seg : panels_split_at(0.0, R, cuts)) {
        const bool deep_left = std::abs(seg.a - r) < 1e-14 * (r + R);
        const bool deep_right = std::abs(seg.b - r) < 1e-14 * (r + R);
        const double mid = 0.5 * (seg.a + seg.b);
        std::vector<Panel> panels;
        append_panels(panels, graded_panels(seg.a, mid, false, opt.lambda_ratio,
                                            deep_left ? opt.lambda_levels : 10));
        append_panels(panels, graded_panels(mid, seg.b, true, opt.lambda_ratio,
                                            deep_right ? opt.lambda_levels : 10));
        panels = enforce_max_width(panels, (seg.b - seg.a) / opt.base_panels * 4.0);
        total += integrate(f, panels, opt.lambda_order);
    }
    return sphere_area(n - 1) / r * total;
}

/// Profile of T_gamma v sampled on the given grid.
inline RadialProfile riesz_radial(const RadialProfile& w, double gamma, const RadialGrid& out,
                                  const RieszOptions& opt = {}) {
    std::vector<double> vals(out.size());
    parallel_for(out.size(), [&](std::size_t i) {
        vals[i] = riesz_radial_at(w, gamma, out.nodes()[i], opt);
    });
    return RadialProfile::sampled(w.dim(), {out.nodes().begin(), out.nodes().end()}, std::move(vals));
}

// ---------------------------------------------------------------------------
// Direct n-dimensional oracle for cross-validation, n in {2, 3} only.
// Cartesian tensor Gauss-Legendre cells over the support box; cells crossing a
// jump sphere of the profile or closing in on the singular point are
// subdivided recursively; the ball |y - x| < eps is excluded and replaced by
// the analytic contribution of a locally constant integrand,
//   w(r) * |S^{n-1}| eps^{n-gamma} / (n - gamma).
// Documented accuracy target: 1e-4 relative.
// ---------------------------------------------------------------------------

struct OracleOptions {
    int base_panels = 12;     // per axis
    int order = 4;            // per-axis Gauss order per cell
    int jump_depth = 3;       // extra subdivision at jump spheres
    int max_depth = 24;       // cap for grading toward the singular point
    double eps_fraction = 1e-3;  // eps relative to the box half-width
};

namespace detail {

struct OracleContext {
    const RadialProfile* w;
    double gamma;
    double r;  // singular point at (r, 0[, 0])
    double eps;
    std::vector<double> jump_radii;
    int n;
    OracleOptions opt;
};

inline double oracle_cell(const OracleContext& ctx, const std::array<double, 3>& lo,
                          const std::array<double, 3>& hi, int depth, bool near_jump_parent) {
    const int n = ctx.n;
    // distance range from the origin over the cell
    double near2 = 0.0, far2 = 0.0;
    for (int d = 0; d < n; ++d) {
        const double lod = lo[d], hid = hi[d];
        const double nearest = std::clamp(0.0, lod, hid);
        near2 += nearest * nearest;
        far2 += std::max(lod * lod, hid * hid);
    }
    // distance range from the singular point
    double sing_near2 = 0.0;
    double diam2 = 0.0;
    for (int d = 0; d < n; ++d) {
        const double c = d == 0 ? ctx.r : 0.0;
        const double nearest = std::clamp(c, lo[d], hi[d]);
        sing_near2 += (nearest - c) * (nearest - c);
        diam2 += (hi[d] - lo[d]) * (hi[d] - lo[d]);
    }
    const double diam = std::sqrt(diam2);
    const double sing_dist = std::sqrt(sing_near2);

    bool split = false;
    if (depth < ctx.opt.max_depth) {
        // grade toward the singular point until cells reach the eps scale
        if (sing_dist < 1.5 * diam && diam > 0.7 * ctx.eps) split = true;
        // refine across jump spheres a fixed number of levels
        if (!split && depth < ctx.opt.jump_depth) {
            for (double R : ctx.jump_radii)
                if (near2 <= R * R && R * R <= far2) {
                    split = true;
                    break;
                }
        }
        (void)near_jump_parent;
    }

    if (split) {
        std::array<double, 3> mid = lo;
        for (int d = 0; d < n; ++d) mid[d] = 0.5 * (lo[d] + hi[d]);
        double sum = 0.0;
        const int children = 1 << n;
        for (int i = 0; i < children; ++i) {
            std::array<double, 3> clo = lo, chi = hi;
            for (int d = 0; d < n; ++d) {
                if ((i >> d) & 1) clo[d] = mid[d];
                else chi[d] = mid[d];
            }
            sum += oracle_cell(ctx, clo, chi, depth + 1, false);
        }
        return sum;
    }

    const GaussRule& rule = gauss_legendre(ctx.opt.order);
    const int m = static_cast<int>(rule.nodes.size());
    std::array<std::array<double, 16>, 3> pts{}, wts{};
    for (int d = 0; d < n; ++d) {
        const double midd = 0.5 * (lo[d] + hi[d]), half = 0.5 * (hi[d] - lo[d]);
        for (int k = 0; k < m; ++k) {
            pts[d][k] = midd + half * rule.nodes[k];
            wts[d][k] = half * rule.weights[k];
        }
    }
    const double eps2 = ctx.eps * ctx.eps;
    double sum = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const int kmax = n == 3 ? m : 1;
            for (int k = 0; k < kmax; ++k) {
                const double y1 = pts[0][i], y2 = pts[1][j], y3 = n == 3 ? pts[2][k] : 0.0;
                const double rho = std::sqrt(y1 * y1 + y2 * y2 + y3 * y3);
                const double wv = (*ctx.w)(rho);
                if (wv == 0.0) continue;
                const double d2 = (y1 - ctx.r) * (y1 - ctx.r) + y2 * y2 + y3 * y3;
                if (d2 < eps2) continue;  // covered by the analytic ball term
                const double weight = wts[0][i] * wts[1][j] * (n == 3 ? wts[2][k] : 1.0);
                sum += weight * wv * std::pow(d2, -0.5 * ctx.gamma);
            }
        }
    return sum;
}

}  // namespace detail

inline double riesz_direct_oracle(const RadialProfile& w, double gamma, double x_radius,
                                  const OracleOptions& opt = {}) {
    const int n = w.dim();
    if (n != 2 && n != 3)
        throw DomainError("riesz_direct_oracle: only n in {2, 3} (oracle only)");
    if (!(gamma > 0.0 && gamma < n)) throw DomainError("riesz_direct_oracle: gamma out of (0, n)");
    if (w.amplitude() == 0.0) return 0.0;

    detail::OracleContext ctx;
    ctx.w = &w;
    ctx.gamma = gamma;
    ctx.r = x_radius;
    ctx.n = n;
    ctx.opt = opt;
    const double L = norm_truncation_radius(w, 1.0);
    ctx.eps = opt.eps_fraction * L;
    for (double b : w.breakpoints())
        if (w.has_jump()) ctx.jump_radii.push_back(b);

    double total = 0.0;
    const int base = opt.base_panels;
    const double h = 2.0 * L / base;
    std::vector<std::array<double, 6>> cells;
    for (int i = 0; i < base; ++i)
        for (int j = 0; j < base; ++j) {
            const int kmax = n == 3 ? base : 1;
            for (int k = 0; k < kmax; ++k)
                cells.push_back({-L + i * h, -L + j * h, n == 3 ? -L + k * h : 0.0,
                                 -L + (i + 1) * h, -L + (j + 1) * h, n == 3 ? -L + (k + 1) * h : 0.0});
        }
    std::vector<double> partial(cells.size());
    parallel_for(cells.size(), [&](std::size_t c) {
        const auto& box = cells[c];
        partial[c] = detail::oracle_cell(ctx, {box[0], box[1], box[2]}, {box[3], box[4], box[5]}, 0, false);
    });
    for (double v : partial) total += v;

    // analytic small-ball contribution, if the singular point sees the profile
    const double wx = w(std::abs(x_radius));
    if (wx != 0.0) total += wx * sphere_area(n) * std::pow(ctx.eps, n - gamma) / (n - gamma);
    return total;
}

// ---------------------------------------------------------------------------
// Exponent tuples.
// ---------------------------------------------------------------------------

/// Exponents of the weighted radial HLS inequality: 1 < p < q < inf,
/// alpha < 1/p', beta < 1/q, alpha + beta >= 0; mu = alpha + beta + 1/p - 1/q.
struct HlsExponents {
    int n = 3;
    double p = 2.0;
    double q = 4.0;
    double alpha = 0.0;
    double beta = 0.0;

    double mu() const { return alpha + beta + 1.0 / p - 1.0 / q; }
    double p_conj() const { return p / (p - 1.0); }

    std::string violated_hypothesis() const {
        if (n < 2) return "n >= 2";
        if (!(p > 1.0)) return "1 < p";
        if (!(p < q)) return "p < q";
        if (!std::isfinite(q)) return "q < infinity";
        if (!(alpha < 1.0 / p_conj())) return "alpha < 1/p'";
        if (!(beta < 1.0 / q)) return "beta < 1/q";
        if (!(alpha + beta >= 0.0)) return "alpha + beta >= 0";
        return {};
    }
    bool admissible() const { return violated_hypothesis().empty(); }
};

/// Stein-Weiss exponents: q derived from 1/q = 1/p + (gamma+alpha+beta)/n - 1.
struct SteinWeissExponents {
    int n = 1;
    double gamma = 0.5;
    double p = 2.0;
    double alpha = 0.0;
    double beta = 0.0;

    double q() const {
        const double inv = 1.0 / p + (gamma + alpha + beta) / n - 1.0;
        return inv > 0.0 ? 1.0 / inv : inf;
    }
    std::string violated_hypothesis() const {
        if (n < 1) return "n >= 1";
        if (!(gamma > 0.0 && gamma < n)) return "0 < gamma < n";
        if (!(p > 1.0 && std::isfinite(p))) return "1 < p < infinity";
        const double pc = p / (p - 1.0);
        if (!(alpha < n / pc)) return "alpha < n/p'";
        if (!std::isfinite(q())) return "q < infinity";
        if (!(beta < n / q())) return "beta < n/q";
        if (!(alpha + beta >= 0.0)) return "alpha + beta >= 0";
        if (!(p <= q())) return "p <= q";
        return {};
    }
    bool admissible() const { return violated_hypothesis().empty(); }
};

// ---------------------------------------------------------------------------
// Ratio checks.
// ---------------------------------------------------------------------------

/// Pointwise bound for T_{n-s} of non-negative radial data, n >= 3:
/// ratio of r^{(n-1)/q} (T_{n-s}v)(r) to int lam^{(n-1)/q} w |r-lam|^{s-1} dlam
/// at every grid radius, and its supremum (the empirical constant).
inline RatioReport pointwise_bound_ratio(const RadialProfile& w, double s, double q,
                                         const RadialGrid& grid, const RieszOptions& opt = {}) {
    const int n = w.dim();
    if (n < 3) throw DomainError("pointwise_bound_ratio: dimension must be >= 3");
    if (!(s > 0.0 && s < 1.0)) throw DomainError("pointwise_bound_ratio: s must be in (0, 1)");
    const double R = norm_truncation_radius(w, 1.0);
    bool any_positive = false;
    for (double lam : grid.nodes()) {
        const double v = w(lam);
        if (v < 0.0) throw DomainError("pointwise_bound_ratio: profile must be non-negative");
        if (v > 0.0) any_positive = true;
    }
    if (!any_positive || w.amplitude() == 0.0)
        throw DegenerateInputError("pointwise_bound_ratio: profile is identically zero");

    const double ex = (n - 1.0) / q;
    const std::vector<Panel> segs = panels_split_at(0.0, R, w.breakpoints());
    RatioReport rep;
    rep.op = "pointwise_bound";
    rep.exponents = {{"n", double(n)}, {"s", s}, {"q", q}};
    rep.grid_meta = {{"radii", double(grid.size())}, {"R_support", R}};
    rep.samples.resize(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const double r = grid.nodes()[i];
        const double lhs = std::pow(r, ex) * riesz_radial_at(w, n - s, r, opt);
        double rhs = 0.0;
        for (const Panel& seg : segs)
            rhs += singular_power_integral(
                [&](double lam) { return std::pow(lam, ex) * w(lam); }, seg.a, seg.b, r, s - 1.0);
        rep.samples[i] = {"radius", r, lhs, rhs, lhs / rhs};
    });
    rep.finalize();
    return rep;
}

/// Weighted radial HLS ratio:
///   || |x|^{-beta} T_{n-mu} v ||_{L^q}  /  || |x|^{alpha-(n-1)(1/p-1/q)} v ||_{L^p}.
inline RatioReport weighted_hls_ratio(const RadialProfile& w, const HlsExponents& e,
                                      int out_resolution = 360, const RieszOptions& opt = {}) {
    if (w.dim() != e.n) throw InputError("weighted_hls_ratio: profile dimension mismatch");
    const std::string bad = e.violated_hypothesis();
    if (!bad.empty()) throw DomainError("weighted_hls_ratio: inadmissible exponents: " + bad);

    const double mu = e.mu();
    const double a_rhs = e.alpha - (e.n - 1.0) * (1.0 / e.p - 1.0 / e.q);
    const double rhs = weighted_lp_norm(w, e.p, a_rhs);
    if (rhs == 0.0) throw DegenerateInputError("weighted_hls_ratio: zero denominator");

    const double R = norm_truncation_radius(w, 1.0);
    const double r_cap = 32.0 * R;
    std::vector<double> cuts = w.breakpoints();
    RadialGrid out = make_grid(r_cap, out_resolution, GridStyle::composite, cuts);
    std::vector<double> tv(out.size());
    parallel_for(out.size(), [&](std::size_t i) {
        tv[i] = std::abs(riesz_radial_at(w, e.n - mu, out.nodes()[i], opt));
    });
    const double lhs = weighted_lp_norm_samples(tv, out, e.n, e.q, -e.beta);

    // tail of the truncated L^q integral: |T v|(r) <= ||v||_1 (r - R)^{-(n-mu)} out there
    const double mass = weighted_lp_norm(w, 1.0, 0.0);
    const double tail_exp = e.q * (e.beta + e.n - mu) - e.n;
    const double tail =
        tail_exp > 0.0
            ? sphere_area(e.n) * std::pow(mass, e.q) * std::pow(r_cap - R, -tail_exp) / tail_exp
            : inf;

    RatioReport rep;
    rep.op = "weighted_hls";
    rep.exponents = {{"n", double(e.n)}, {"p", e.p}, {"q", e.q},
                     {"alpha", e.alpha}, {"beta", e.beta}, {"mu", mu}};
    rep.samples = {{std::string("profile:") + w.kind_name(), 0.0, lhs, rhs, lhs / rhs}};
    rep.grid_meta = {{"out_nodes", double(out.size())}, {"r_cap", r_cap}};
    rep.tail_bounds = {{"lhs_q_tail", tail}};
    rep.finalize();
    return rep;
}

/// One-dimensional Stein-Weiss ratio
///   || |t|^{-beta} T_gamma f ||_{L^q(R)} / || |t|^alpha f ||_{L^p(R)} .
inline RatioReport stein_weiss_ratio_1d(const Profile1D& f, const SteinWeissExponents& e,
                                        int out_resolution = 200) {
    if (e.n != 1) throw InputError("stein_weiss_ratio_1d: exponents must have n = 1");
    const std::string bad = e.violated_hypothesis();
    if (!bad.empty()) throw DomainError("stein_weiss_ratio_1d: inadmissible exponents: " + bad);
    if (f.is_zero()) throw DegenerateInputError("stein_weiss_ratio_1d: zero profile");
    const double q = e.q();

    const auto [lo, hi] = f.support();
    const double scale = std::max({std::abs(lo), std::abs(hi), hi - lo});

    // RHS: |t|^{p alpha} |f|^p over the support (singular at 0 if inside)
    double rhs_int = 0.0;
    for (const Panel& seg : panels_split_at(lo, hi, f.breakpoints()))
        rhs_int += singular_power_integral([&](double t) { return std::pow(std::abs(f(t)), e.p); },
                                           seg.a, seg.b, 0.0, e.p * e.alpha);
    const double rhs = std::pow(rhs_int, 1.0 / e.p);
    if (rhs == 0.0) throw DegenerateInputError("stein_weiss_ratio_1d: zero profile");

    auto Tf = [&](double t) {
        double v = 0.0;
        for (const Panel& seg : panels_split_at(lo, hi, f.breakpoints()))
            v += singular_power_integral([&](double y) { return f(y); }, seg.a, seg.b, t, -e.gamma);
        return v;
    };

    const double t_cap = 32.0 * scale;
    RadialGrid tgrid = make_grid(t_cap, out_resolution, GridStyle::composite,
                                 std::vector<double>{std::abs(lo), std::abs(hi)});
    double lhs_int = 0.0;
    std::vector<double> contrib(tgrid.size());
    parallel_for(tgrid.size(), [&](std::size_t i) {
        const double t = tgrid.nodes()[i];
        const double wgt = std::pow(t, -q * e.beta);
        contrib[i] = tgrid.weights()[i] * wgt *
                     (std::pow(std::abs(Tf(t)), q) + std::pow(std::abs(Tf(-t)), q));
    });
    for (double c : contrib) lhs_int += c;
    const double lhs = std::pow(lhs_int, 1.0 / q);

    // tail: |T_gamma f| <= ||f||_1 (|t| - hi)^{-gamma} beyond the cap
    double mass = 0.0;
    for (const Panel& seg : panels_split_at(lo, hi, f.breakpoints()))
        mass += integrate_panel([&](double y) { return std::abs(f(y)); }, seg.a, seg.b, 12);
    const double tail_exp = q * (e.beta + e.gamma) - 1.0;
    const double tail = tail_exp > 0.0
                            ? 2.0 * std::pow(mass, q) * std::pow(t_cap - hi, -tail_exp) / tail_exp
                            : inf;

    RatioReport rep;
    rep.op = "stein_weiss_1d";
    rep.exponents = {{"n", 1.0}, {"gamma", e.gamma}, {"p", e.p}, {"q", q},
                     {"alpha", e.alpha}, {"beta", e.beta}};
    rep.samples = {{"profile", 0.0, lhs, rhs, lhs / rhs}};
    rep.grid_meta = {{"t_nodes", double(tgrid.size())}, {"t_cap", t_cap}};
    rep.tail_bounds = {{"lhs_q_tail", tail}};
    rep.finalize();
    return rep;
}

/// int_a^b 2 rho / (sqrt(rho^2-a^2) sqrt(b^2-rho^2)) drho, which equals
/// B(1/2,1/2) = pi for every 0 < a < b. Canonical test of the double-endpoint
/// singular quadrature.
inline double beta_identity_check(double a, double b, int npts = 64) {
    if (!(0.0 < a && a < b)) throw DomainError("beta_identity_check: need 0 < a < b");
    return chebyshev_singular_integral([](double rho) { return 2.0 * rho; }, a, b, npts);
}

}  // namespace radstri
