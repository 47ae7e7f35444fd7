#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "radstri/propagators.hpp"
#include "radstri/report.hpp"
#include "radstri/wave_explicit.hpp"

namespace radstri {

// ---------------------------------------------------------------------------
// Failure of the critical Strichartz estimate: bump data, the tail integral
// Psi, the per-time lower bound, and the logarithmic growth of the critical
// mixed norm, plus the unbounded scaling sequence.
// ---------------------------------------------------------------------------

/// Exponent pair on the critical line 1/q = (n-1)(1/2 - 1/p),
/// (1/q, 1/p) in (0, 1/2] x [0, 1/2). Construction rejects other tuples.
struct CriticalPair {
    int n;
    double q;
    double p;

    static CriticalPair make(int n, double q, double p) {
        if (n < 2) throw EstimateSpecError("CriticalPair: n >= 2");
        const double x = 1.0 / q, y = std::isfinite(p) ? 1.0 / p : 0.0;
        if (!(x > 0.0 && x <= 0.5 && y >= 0.0 && y < 0.5))
            throw EstimateSpecError("CriticalPair: (1/q,1/p) outside (0,1/2] x [0,1/2)");
        if (std::abs(x - (n - 1.0) * (0.5 - y)) > 1e-12)
            throw EstimateSpecError("CriticalPair: 1/q = (n-1)(1/2-1/p) violated; "
                                    "subcritical pairs belong to the estimates module");
        return {n, q, p};
    }
};

/// Mollifier data for the counterexample: psi fills the window
/// (1/(1+delta), 1) with delta from the polynomial threshold; Psi is its
/// weighted tail integral and A the lower-bound constant.
struct BumpData {
    int n = 3;
    double delta = 1.0;
    double R = 1.0;
    RadialProfile psi = RadialProfile::zero(3);

    double window_lo() const { return R / (1.0 + delta); }

    /// Psi(rho) = int_rho^R lam^{(n-1)/2} psi(lam) dlam (non-increasing, Psi(R)=0).
    double Psi(double rho) const {
        if (rho >= R) return 0.0;
        const double ex = 0.5 * (n - 1.0);
        const double lo = std::max(rho, 0.0);
        return integrate([&](double lam) { return std::pow(lam, ex) * psi(lam); },
                         uniform_panels(lo, R, 24), 8);
    }

    /// A = ( int_{R/(1+delta)}^{R} Psi^p )^{1/p} > 0.
    double lower_bound_constant(double p) const {
        const double v = integrate([&](double rho) { return std::pow(Psi(rho), p); },
                                   uniform_panels(window_lo(), R, 32), 8);
        return std::pow(v, 1.0 / p);
    }
};

inline BumpData build_bump(int n) {
    if (n < 2) throw InputError("build_bump: n >= 2");
    const int m = (n % 2 == 1) ? (n - 1) / 2 : n / 2;
    BumpData data;
    data.n = n;
    data.delta = delta_threshold(m);
    const double lo = data.window_lo();
    data.psi = RadialProfile::bump(n, 0.5 * (lo + 1.0), 0.5 * (1.0 - lo));
    if (!(data.Psi(lo) > 0.0))
        throw DegenerateInputError("build_bump: Psi vanishes on the window");
    return data;
}

// ---------------------------------------------------------------------------
// Growth of N(T) = ||u||^q_{L^q((0,T); L^p)} for the solution with data (0, g).
// ---------------------------------------------------------------------------

struct GrowthOptions {
    int shell_panels = 18;
    int shell_order = 6;
    int time_per_decade = 10;
    int time_order = 5;
    double head_panels = 16;  // uniform panels before the geometric regime
    WaveExplicitOptions wave;
    BandOptions band;
};

namespace detail {

/// || u(t) ||_{L^p(R^n)} for the explicit odd-dimensional solution; the field
/// is supported in |r - t| <= R (strong Huygens), so one shell integral per
/// slice. `full_grid` integrates over [0, t+R+pad] instead, for consistency
/// checks.
inline double odd_slice_lp(const RadialProfile& psi, double t, double q_unused, double p,
                           const GrowthOptions& opt, bool full_grid = false) {
    (void)q_unused;
    const int n = psi.dim();
    const double R = psi.tail_radius();
    const double lo = full_grid ? 1e-9 : std::max(t - R, 1e-9);
    const double hi = t + R;
    auto integrand = [&](double r) {
        const double v = std::abs(wave_explicit_at(psi, t, r, opt.wave));
        return std::pow(v, p) * std::pow(r, n - 1.0);
    };
    const double val =
        integrate(integrand, uniform_panels(lo, hi, full_grid ? 4 * opt.shell_panels
                                                              : opt.shell_panels),
                  opt.shell_order);
    return std::pow(sphere_area(n) * val, 1.0 / p);
}

inline TimeGrid growth_time_grid(double t_max, double head_scale, const GrowthOptions& opt) {
    std::vector<Panel> panels;
    const double head = std::min(2.0 * head_scale, t_max);
    append_panels(panels, uniform_panels(0.0, head, static_cast<int>(opt.head_panels)));
    if (t_max > head) {
        double a = head;
        const double grow = std::pow(10.0, 1.0 / opt.time_per_decade);
        double w = head * (grow - 1.0);
        while (a + w < t_max) {
            panels.push_back({a, a + w});
            a += w;
            w *= grow;
        }
        panels.push_back({a, t_max});
    }
    TimeGrid tg;
    tg.t0 = 0.0;
    tg.t1 = t_max;
    const GaussRule& rule = gauss_legendre(opt.time_order);
    for (const Panel& pan : panels) {
        const double mid = 0.5 * (pan.a + pan.b), hl = 0.5 * (pan.b - pan.a);
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            tg.nodes.push_back(mid + hl * rule.nodes[k]);
            tg.weights.push_back(hl * rule.weights[k]);
        }
    }
    return tg;
}

}  // namespace detail

/// N(T) at each requested horizon, for arbitrary (q, p) with p finite.
/// Odd dimensions use the explicit shell representation; even dimensions are
/// evolved spectrally (the explicit formula covers only r > t).
inline std::vector<double> norm_growth_values(const RadialProfile& psi, double q, double p,
                                              std::span<const double> T_list,
                                              const GrowthOptions& opt = {}) {
    const int n = psi.dim();
    const double R = psi.tail_radius();
    const double t_max = T_list.back();
    const bool odd = (n % 2) == 1;
    TimeGrid tg = detail::growth_time_grid(t_max, R, opt);

    std::vector<double> slice_q(tg.nodes.size());
    if (odd) {
        parallel_for(tg.nodes.size(), [&](std::size_t i) {
            slice_q[i] = std::pow(detail::odd_slice_lp(psi, tg.nodes[i], q, p, opt), q);
        });
    } else {
        SpectralProfile probe = hankel_transform(psi, 1.0, opt.band);
        const double extent = t_max + R + 2.0;
        RadialGrid rgrid = wave_field_grid(extent, probe.rho_max(), 30);
        WavePlan plan(psi, t_max, rgrid, opt.band);
        for (std::size_t i = 0; i < tg.nodes.size(); ++i) {
            ComplexProfile u = plan.wave(tg.nodes[i], WaveKind::sine_over_d);
            slice_q[i] = std::pow(u.lp_norm(p, 0.0), q);
        }
    }

    std::vector<double> out(T_list.size(), 0.0);
    for (std::size_t i = 0; i < tg.nodes.size(); ++i) {
        for (std::size_t j = 0; j < T_list.size(); ++j)
            if (tg.nodes[i] <= T_list[j]) out[j] += tg.weights[i] * slice_q[i];
    }
    return out;
}

/// Growth table for the critical pair, with the logarithmic lower bound
/// N(T) >= (A^q/4^q) log((T+1)/(delta/(2(1+delta))+1)) alongside.
inline GrowthTable critical_norm_growth(const CriticalPair& pair, const BumpData& data,
                                        std::span<const double> T_list,
                                        const GrowthOptions& opt = {}) {
    if (pair.n != data.n) throw InputError("critical_norm_growth: dimension mismatch");
    if (!std::isfinite(pair.p))
        throw InputError("critical_norm_growth: p = infinity runs through two_d_endpoint_growth");
    GrowthTable table;
    table.op = "critical_norm_growth";
    table.T.assign(T_list.begin(), T_list.end());
    table.value = norm_growth_values(data.psi, pair.q, pair.p, T_list, opt);

    const double A = data.lower_bound_constant(pair.p);
    const double t0 = data.delta / (2.0 * (1.0 + data.delta));
    const double slope_bound = std::pow(A, pair.q) / std::pow(4.0, pair.q);
    for (double T : T_list)
        table.lower_bound.push_back(T >= t0 ? slope_bound * std::log((T + 1.0) / (t0 + 1.0))
                                            : 0.0);
    std::vector<double> logT;
    for (double T : T_list) logT.push_back(std::log(T));
    table.log_fit = fit_line(logT, table.value);
    table.meta = {{"n", double(pair.n)}, {"q", pair.q}, {"p", pair.p},
                  {"A", A}, {"delta", data.delta}, {"slope_bound", slope_bound},
                  {"t_threshold", t0}};
    return table;
}

/// Both sides of the per-time shell bound
///   int_{t+R/(1+delta)}^{t+R} v^p r^{n-1} dr
///     >= (1/4^p) (t+1)^{-((n-1)/2)p+(n-1)} A^p ,
/// for t >= delta/(2(1+delta)).
struct ChainSides {
    double shell_integral;
    double bound;
    bool passes() const { return shell_integral >= bound * (1.0 - 1e-9); }
};

inline ChainSides lower_bound_chain(const CriticalPair& pair, const BumpData& data, double t,
                                    const GrowthOptions& opt = {}) {
    const double t0 = data.delta / (2.0 * (1.0 + data.delta));
    if (t < t0 - 1e-12) throw RegionError("lower_bound_chain: t below delta/(2(1+delta))");
    const int n = data.n;
    const double lo = t + data.window_lo(), hi = t + data.R;
    auto integrand = [&](double r) {
        const double v = wave_explicit_at(data.psi, t, r, opt.wave);
        return std::pow(std::max(v, 0.0), pair.p) * std::pow(r, n - 1.0);
    };
    ChainSides out{};
    out.shell_integral = integrate(integrand, uniform_panels(lo, hi, opt.shell_panels),
                                   opt.shell_order);
    const double A = data.lower_bound_constant(pair.p);
    out.bound = std::pow(4.0, -pair.p) *
                std::pow(t + 1.0, -(0.5 * (n - 1.0)) * pair.p + (n - 1.0)) *
                std::pow(A, pair.p);
    return out;
}

/// The (q, p) = (2, inf) endpoint in two dimensions:
///   int_{t0}^{T} || v(t,.) ||^2_{Linf(t+1/(1+delta) < r < t+c0)} dt
///     >= (1/16) Psi(c0)^2 log((T+c0)/(t0+c0)) .
inline GrowthTable two_d_endpoint_growth(const BumpData& data, double c0,
                                         std::span<const double> T_list,
                                         const GrowthOptions& opt = {}) {
    if (data.n != 2) throw InputError("two_d_endpoint_growth: data must be two-dimensional");
    if (!(c0 > data.window_lo() && c0 < data.R))
        throw DomainError("two_d_endpoint_growth: c0 outside (1/(1+delta), 1)");
    const double Psi_c0 = data.Psi(c0);
    if (!(Psi_c0 > 0.0)) throw DomainError("two_d_endpoint_growth: Psi(c0) = 0");

    auto shell_sup_sq = [&](double t) {
        // grid maximum over the shell, refined until stable
        const double lo = t + data.window_lo(), hi = t + c0;
        double prev = -1.0, sup = 0.0;
        for (int k = 32; k <= 512; k *= 2) {
            sup = 0.0;
            for (int i = 0; i <= k; ++i) {
                const double r = lo + (hi - lo) * (i + 0.5) / (k + 1);
                sup = std::max(sup, std::abs(wave_explicit_at(data.psi, t, r, opt.wave)));
            }
            if (prev >= 0.0 && std::abs(sup - prev) <= 1e-3 * sup) break;
            prev = sup;
        }
        return sup * sup;
    };

    const double t0 = data.delta / (2.0 * (1.0 + data.delta));
    const double t_max = T_list.back();
    TimeGrid tg = detail::growth_time_grid(t_max - t0, data.R, opt);
    std::vector<double> vals(tg.nodes.size());
    parallel_for(tg.nodes.size(), [&](std::size_t i) { vals[i] = shell_sup_sq(t0 + tg.nodes[i]); });

    GrowthTable table;
    table.op = "two_d_endpoint_growth";
    table.T.assign(T_list.begin(), T_list.end());
    table.value.assign(T_list.size(), 0.0);
    for (std::size_t i = 0; i < tg.nodes.size(); ++i)
        for (std::size_t j = 0; j < T_list.size(); ++j)
            if (t0 + tg.nodes[i] <= T_list[j]) table.value[j] += tg.weights[i] * vals[i];
    for (double T : T_list)
        table.lower_bound.push_back(Psi_c0 * Psi_c0 / 16.0 *
                                    std::log((T + c0) / (t0 + c0)));
    std::vector<double> logT;
    for (double T : T_list) logT.push_back(std::log(T));
    table.log_fit = fit_line(logT, table.value);
    table.meta = {{"n", 2.0}, {"c0", c0}, {"Psi_c0", Psi_c0}, {"delta", data.delta},
                  {"t_threshold", t0}};
    return table;
}

/// Ratio || u_h ||_{L^q((0,1);L^p)} / || |D|^{-1/2-1/p} h ||_{L2} along the
/// dilation sequence h_lambda = psi(lambda .); diverges along the sequence
/// for critical pairs.
inline RatioReport scaling_sequence(const CriticalPair& pair, const BumpData& base,
                                    std::span<const double> scales,
                                    const GrowthOptions& opt = {}) {
    if (pair.n != base.n) throw InputError("scaling_sequence: dimension mismatch");
    RatioReport rep;
    rep.op = "scaling_sequence";
    rep.exponents = {{"n", double(pair.n)}, {"q", pair.q}, {"p", pair.p}};
    const double s_tilde = -0.5 - 1.0 / pair.p;
    for (double lam : scales) {
        if (lam < 1.0) throw InputError("scaling_sequence: scales must be >= 1");
        RadialProfile h = base.psi.dilated(lam);
        const double T_one[] = {1.0};
        GrowthOptions local = opt;
        local.time_per_decade = std::max(opt.time_per_decade, 12);
        const double num =
            std::pow(norm_growth_values(h, pair.q, pair.p, T_one, local).front(), 1.0 / pair.q);
        SpectralProfile spec = hankel_transform(h, 1.0, opt.band);
        const double den = spec.sobolev_norm(s_tilde);
        rep.samples.push_back({"scale", lam, num, den, num / den});
    }
    rep.finalize();
    return rep;
}

}  // namespace radstri
