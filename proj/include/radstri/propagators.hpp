#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "radstri/spectral.hpp"

namespace radstri {

// ---------------------------------------------------------------------------
// Free evolutions of radial data:
//   (W phi)(t) = F^{-1} e^{it|xi|}   F phi   (half-wave; cos / sin(t|xi|)/|xi|
//                                             build the second-order solution)
//   (S phi)(t) = F^{-1} e^{it|xi|^2} F phi   (Schroedinger)
// ---------------------------------------------------------------------------

struct ComplexProfile {
    int n = 0;
    RadialGrid grid;
    std::vector<std::complex<double>> values;

    std::vector<double> magnitudes() const {
        std::vector<double> m(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) m[i] = std::abs(values[i]);
        return m;
    }
    double lp_norm(double p, double a = 0.0) const {
        return weighted_lp_norm_samples(magnitudes(), grid, n, p, a);
    }
    double l2_norm() const { return lp_norm(2.0, 0.0); }
    RadialProfile abs_profile() const {
        return RadialProfile::sampled(n, {grid.nodes().begin(), grid.nodes().end()}, magnitudes());
    }
    RadialProfile real_profile() const {
        std::vector<double> re(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) re[i] = values[i].real();
        return RadialProfile::sampled(n, {grid.nodes().begin(), grid.nodes().end()}, std::move(re));
    }
};

enum class WaveKind { half_wave, cosine, sine_over_d };

namespace detail {

/// Uniform table with 4-point (Catmull-Rom style Lagrange) interpolation.
struct UniformTable {
    double x0 = 0.0;
    double dx = 1.0;
    std::vector<double> y;
    double beyond = 0.0;  // value past the right end
    bool has_tail_model = false;
    double tail_limit = 0.0;
    double tail_coeff = 0.0;

    double operator()(double x) const {
        const double u = (x - x0) / dx;
        if (u <= 0.0) return y.front();
        if (u >= static_cast<double>(y.size() - 1)) {
            if (has_tail_model) return tail_limit - tail_coeff / (x * x);
            return beyond;
        }
        std::size_t i = static_cast<std::size_t>(u);
        i = std::clamp<std::size_t>(i, 1, y.size() - 3);
        const double s = u - static_cast<double>(i);
        const double ym = y[i - 1], y0 = y[i], y1 = y[i + 1], y2 = y[i + 2];
        // cubic Lagrange through the four surrounding points
        const double a = -ym / 6.0 + y0 / 2.0 - y1 / 2.0 + y2 / 6.0;
        const double b = ym / 2.0 - y0 + y1 / 2.0;
        const double c = -ym / 3.0 - y0 / 2.0 + y1 - y2 / 6.0;
        return ((a * s + b) * s + c) * s + y0;
    }
};

/// Cumulative Simpson prefix of g over a uniform table (even refinement).
inline UniformTable prefix_table(const UniformTable& g, auto&& weight) {
    UniformTable p;
    p.x0 = g.x0;
    p.dx = g.dx;
    p.y.resize(g.y.size());
    p.y[0] = 0.0;
    for (std::size_t i = 0; i + 1 < g.y.size(); ++i) {
        const double a = g.x0 + i * g.dx, b = a + g.dx, m = a + 0.5 * g.dx;
        const double fa = weight(a) * g.y[i], fb = weight(b) * g.y[i + 1],
                     fm = weight(m) * g(m);
        p.y[i + 1] = p.y[i] + g.dx / 6.0 * (fa + 4.0 * fm + fb);
    }
    p.beyond = p.y.back();
    return p;
}

}  // namespace detail

/// Reusable spectral evolution: one forward transform, one Bessel kernel
/// matrix, many multiplier evaluations. `horizon` bounds |t|; the frequency
/// resolution is chosen for |t| + r up to horizon + r_max.
///
/// In three dimensions the evolution reduces to d'Alembert form: with
/// v = r u, the cosine part is exact in the data and the sine parts are
/// prefix integrals,
///   cos(t|D|) phi  = [(r+t) phi(r+t) + (r-t) phi(|r-t|)] / (2r)
///   sin(t|D|)/|D| g = [P0(r+t) - P0(|r-t|)] / (2r),  P0' (lam) = lam g(lam)
///   Im e^{it|D|} phi = sin(t|D|) phi, via g1 = |D| phi.
/// The plan then evaluates slices in O(log) per node from dense tables
/// (band-limited companions for jump data), instead of a spectral inversion
/// per time.
class WavePlan {
  public:
    WavePlan(const RadialProfile& data, double horizon, RadialGrid out, BandOptions bopt = {})
        : n_(data.dim()), horizon_(horizon), out_(std::move(out)),
          fast3_(data.dim() == 3 && !bopt.force_spectral),
          spec_(hankel_transform(data,
                                 fast3_ ? 6.0 : horizon + out_.r_max() + 1.0, bopt)) {
        if (fast3_) {
            build_dalembert_tables(data, bopt);
            return;
        }
        const std::size_t cells = out_.size() * spec_.freq().size();
        if (cells <= kernel_cache_cap) {
            kernel_.resize(cells);
            build_kernel();
        }
    }

    const RadialGrid& out() const { return out_; }
    const SpectralProfile& spectrum() const { return spec_; }
    double horizon() const { return horizon_; }

    ComplexProfile wave(double t, WaveKind kind) const {
        check_t(t);
        if (fast3_) return wave_dalembert(t, kind);
        switch (kind) {
            case WaveKind::half_wave:
                return apply([t](double rho) {
                    return std::complex<double>(std::cos(t * rho), std::sin(t * rho));
                });
            case WaveKind::cosine:
                return apply([t](double rho) { return std::complex<double>(std::cos(t * rho), 0.0); });
            case WaveKind::sine_over_d:
                return apply([t](double rho) {
                    return std::complex<double>(std::sin(t * rho) / rho, 0.0);
                });
        }
        throw InputError("WavePlan::wave: unknown kind");
    }

    ComplexProfile schrodinger(double t) const {
        check_t(t);
        // phase t rho^2 needs resolution 2 t rho at the band edge
        if (2.0 * std::abs(t) * spec_.rho_max() + out_.r_max() >
            spec_.inversion_scale() * (1.0 + 1e-9))
            throw BandLimitError("WavePlan::schrodinger: time beyond the plan's band");
        return apply([t](double rho) {
            const double ph = t * rho * rho;
            return std::complex<double>(std::cos(ph), std::sin(ph));
        });
    }

    template <class M>
    ComplexProfile apply(M&& mult) const {
        ComplexProfile u{n_, out_, {}};
        u.values.resize(out_.size());
        const auto& freq = spec_.freq();
        const std::size_t nf = freq.size();
        std::vector<std::complex<double>> mw(nf);
        for (std::size_t k = 0; k < nf; ++k) mw[k] = mult(freq.nodes()[k]) * spec_.values()[k];
        if (!kernel_.empty()) {
            parallel_for(out_.size(), [&](std::size_t j) {
                std::complex<double> sum = 0.0;
                const double* row = kernel_.data() + j * nf;
                for (std::size_t k = 0; k < nf; ++k) sum += row[k] * mw[k];
                u.values[j] = sum;
            });
        } else {
            const double nu = 0.5 * n_ - 1.0;
            parallel_for(out_.size(), [&](std::size_t j) {
                const double lam = out_.nodes()[j];
                std::complex<double> sum = 0.0;
                for (std::size_t k = 0; k < nf; ++k) {
                    const double rho = freq.nodes()[k];
                    sum += freq.weights()[k] * bessel_j(nu, lam * rho) * std::pow(rho, 0.5 * n_) *
                           mw[k];
                }
                u.values[j] = std::pow(2.0 * pi, -0.5 * n_) * std::pow(lam, 1.0 - 0.5 * n_) * sum;
            });
        }
        return u;
    }

  private:
    static constexpr std::size_t kernel_cache_cap = 24u * 1000u * 1000u;

    /// Prefix integrals of the d'Alembert pieces straight from the spectrum:
    ///   int_0^s lam^{1/2} J_{1/2}(lam rho) dlam = sqrt(2/(pi rho)) (1-cos(s rho))/rho
    /// gives, for table power p in {0, 1},
    ///   int_0^s lam (|D|^p data)(lam) dlam
    ///     = (1/(2 pi^2)) int what(rho) rho^p (1 - cos(s rho)) drho ,
    /// which avoids error accumulation over the table. Past the table span the
    /// integral is extended by its limit minus a fitted 1/s^2 tail.
    static detail::UniformTable spectral_prefix(const SpectralProfile& fine, std::size_t count,
                                                double dx, double rho_power) {
        detail::UniformTable p;
        p.x0 = 0.0;
        p.dx = dx;
        p.y.resize(count);
        const auto& freq = fine.freq();
        double limit = 0.0;
        for (std::size_t k = 0; k < freq.size(); ++k)
            limit += freq.weights()[k] * fine.values()[k] *
                     std::pow(freq.nodes()[k], rho_power);
        limit /= 2.0 * pi * pi;
        parallel_for(count, [&](std::size_t j) {
            const double s = dx * static_cast<double>(j);
            double sum = 0.0;
            for (std::size_t k = 0; k < freq.size(); ++k) {
                const double rho = freq.nodes()[k];
                sum += freq.weights()[k] * fine.values()[k] * std::pow(rho, rho_power) *
                       (1.0 - std::cos(s * rho));
            }
            p.y[j] = sum / (2.0 * pi * pi);
        });
        // tail model P(s) ~ limit - A / s^2
        const double s_end = dx * static_cast<double>(count - 2);
        const double A = (limit - p.y[count - 2]) * s_end * s_end;
        p.tail_limit = limit;
        p.tail_coeff = A;
        p.beyond = limit;
        p.has_tail_model = true;
        return p;
    }

    void build_dalembert_tables(const RadialProfile& data, const BandOptions& bopt) {
        const double R6 = data.tail_radius(1e-6);
        const double span = 6.0 * R6 + 2.0;
        SpectralProfile fine = hankel_transform(data, span + 1.0, bopt);
        const double dx = std::min(bopt.table_step / fine.rho_max(), 0.02 * R6);
        const std::size_t count = static_cast<std::size_t>(span / dx) + 4;

        lam_g1_prefix_ = spectral_prefix(fine, count, dx, 1.0);
        if (data.has_jump()) {
            // band-limited companion for the cosine part
            detail::UniformTable phiB;
            phiB.x0 = 0.0;
            phiB.dx = dx;
            phiB.y.resize(count);
            const auto& freq = fine.freq();
            parallel_for(count, [&](std::size_t j) {
                const double lam = std::max(dx * static_cast<double>(j), 0.25 * dx);
                double sum = 0.0;
                for (std::size_t k = 0; k < freq.size(); ++k) {
                    const double rho = freq.nodes()[k];
                    sum += freq.weights()[k] * fine.values()[k] * bessel_j(0.5, lam * rho) *
                           std::pow(rho, 1.5);
                }
                phiB.y[j] = std::pow(2.0 * pi, -1.5) * std::pow(lam, -0.5) * sum;
            });
            data_table_ = std::move(phiB);
            lam_data_prefix_ = spectral_prefix(fine, count, dx, 0.0);
        } else {
            detail::UniformTable direct;
            direct.x0 = 0.0;
            direct.dx = dx;
            direct.y.resize(count);
            for (std::size_t j = 0; j < count; ++j) direct.y[j] = data(dx * static_cast<double>(j));
            lam_data_prefix_ = detail::prefix_table(direct, [](double lam) { return lam; });
            data_eval_ = data;
        }
    }

    double data_at(double lam) const {
        if (data_eval_) return (*data_eval_)(lam);
        return data_table_(lam);
    }

    ComplexProfile wave_dalembert(double t, WaveKind kind) const {
        ComplexProfile u{n_, out_, {}};
        u.values.resize(out_.size());
        for (std::size_t j = 0; j < out_.size(); ++j) {
            const double r = out_.nodes()[j];
            const double sp = r + t, sm = std::abs(r - t);
            switch (kind) {
                case WaveKind::cosine:
                    u.values[j] = (sp * data_at(sp) + (r - t) * data_at(sm)) / (2.0 * r);
                    break;
                case WaveKind::sine_over_d:
                    u.values[j] = (lam_data_prefix_(sp) - lam_data_prefix_(sm)) / (2.0 * r);
                    break;
                case WaveKind::half_wave: {
                    const double re = (sp * data_at(sp) + (r - t) * data_at(sm)) / (2.0 * r);
                    const double im = (lam_g1_prefix_(sp) - lam_g1_prefix_(sm)) / (2.0 * r);
                    u.values[j] = {re, im};
                    break;
                }
            }
        }
        return u;
    }

    void build_kernel() {
        const auto& freq = spec_.freq();
        const std::size_t nf = freq.size();
        const double nu = 0.5 * n_ - 1.0;
        parallel_for(out_.size(), [&](std::size_t j) {
            const double lam = out_.nodes()[j];
            const double pref = std::pow(2.0 * pi, -0.5 * n_) * std::pow(lam, 1.0 - 0.5 * n_);
            double* row = kernel_.data() + j * nf;
            for (std::size_t k = 0; k < nf; ++k) {
                const double rho = freq.nodes()[k];
                row[k] = pref * freq.weights()[k] * bessel_j(nu, lam * rho) * std::pow(rho, 0.5 * n_);
            }
        });
    }

    void check_t(double t) const {
        if (std::abs(t) > horizon_ * (1.0 + 1e-9))
            throw InputError("WavePlan: time beyond the configured horizon");
    }

    int n_;
    double horizon_;
    RadialGrid out_;
    bool fast3_ = false;
    SpectralProfile spec_;
    std::vector<double> kernel_;
    // d'Alembert companions (n = 3)
    std::optional<RadialProfile> data_eval_;
    detail::UniformTable data_table_;
    detail::UniformTable lam_data_prefix_;
    detail::UniformTable lam_g1_prefix_;
};

/// Radial grid for norms of propagated waves: covers (0, extent] with panels
/// fine enough for the band's oscillations.
inline RadialGrid wave_field_grid(double extent, double rho_max, int zero_levels = 30) {
    const double width = pi / (2.5 * std::max(rho_max, 1.0));
    const double head = std::min(0.25 * extent, width);
    std::vector<Panel> panels = graded_panels(0.0, head, false, 0.3, zero_levels);
    append_panels(panels, enforce_max_width({{head, extent}}, width));
    return RadialGrid::from_panels(panels, 5, extent);
}

/// One-shot propagator calls (spec ops). Each builds a small plan.
inline ComplexProfile wave_propagator(const RadialProfile& phi, double t, WaveKind kind,
                                      double horizon = 64.0, const BandOptions& bopt = {}) {
    if (std::abs(t) > horizon) throw InputError("wave_propagator: |t| beyond configured horizon");
    SpectralProfile probe = hankel_transform(phi, 1.0, bopt);  // band only
    const double extent = std::abs(t) + norm_truncation_radius(phi, 2.0) + 2.0;
    WavePlan plan(phi, std::abs(t), wave_field_grid(extent, probe.rho_max()), bopt);
    return plan.wave(t, kind);
}

// ---------------------------------------------------------------------------
// Schroedinger evolution. Two routes:
//  - spectral multiplier e^{it rho^2} (small |t|),
//  - Fresnel-Hankel form (any t != 0, compactly supported or decaying data):
//      u(t,r) = (-4 pi i t)^{-n/2} (2pi)^{n/2} e^{-i r^2/(4t)} (r/(2t))^{1-n/2}
//               int_0^inf e^{-i lam^2/(4t)} w(lam) J_{n/2-1}(r lam/(2t)) lam^{n/2} dlam
// The cheaper route is picked per call; both exist for cross-checks.
// ---------------------------------------------------------------------------

inline ComplexProfile schrodinger_fresnel(const RadialProfile& w, double t, const RadialGrid& out,
                                          double reach = inf) {
    if (t == 0.0) throw InputError("schrodinger_fresnel: t must be nonzero");
    const int n = w.dim();
    const double nu = 0.5 * n - 1.0;
    const double R = norm_truncation_radius(w, 2.0);
    const double r_max = out.r_max();
    // lambda-rule resolving the phase lam^2/(4t) and the Bessel argument r lam/(2t)
    const double freq = (R + r_max) / (4.0 * std::abs(t)) / pi;  // periods per unit lambda
    const int per_seg = 3;
    std::vector<Panel> panels;
    for (const Panel& seg : panels_split_at(0.0, R, w.breakpoints()))
        append_panels(panels, uniform_panels(seg.a, seg.b, per_seg));
    panels = enforce_max_width(panels, 0.4 / std::max(freq, 0.05));
    const RadialGrid lam_rule = RadialGrid::from_panels(panels, 6, R);

    const std::complex<double> i1(0.0, 1.0);
    const std::complex<double> pref0 =
        std::pow(std::complex<double>(0.0, -4.0 * pi * t), -0.5 * n) * std::pow(2.0 * pi, 0.5 * n);
    ComplexProfile u{n, out, {}};
    u.values.resize(out.size());
    parallel_for(out.size(), [&](std::size_t j) {
        const double r = out.nodes()[j];
        if (r > reach) {  // beyond the causal reach of the band: negligible
            u.values[j] = 0.0;
            return;
        }
        std::complex<double> sum = 0.0;
        for (std::size_t i = 0; i < lam_rule.size(); ++i) {
            const double lam = lam_rule.nodes()[i];
            const double wv = w(lam);
            if (wv == 0.0) continue;
            const double ph = -lam * lam / (4.0 * t);
            sum += lam_rule.weights()[i] * wv * std::polar(1.0, ph) *
                   bessel_j(nu, r * lam / (2.0 * std::abs(t))) * std::pow(lam, 0.5 * n);
        }
        // J_nu is even in its argument for our orders; t < 0 enters via phases only
        u.values[j] = pref0 * std::polar(1.0, -r * r / (4.0 * t)) *
                      std::pow(r / (2.0 * std::abs(t)), 1.0 - 0.5 * n) * sum;
    });
    return u;
}

inline ComplexProfile schrodinger_propagator(const RadialProfile& phi, double t,
                                             const RadialGrid& out, const BandOptions& bopt = {}) {
    const int n = phi.dim();
    if (t == 0.0) {
        ComplexProfile u{n, out, {}};
        u.values.resize(out.size());
        for (std::size_t j = 0; j < out.size(); ++j) u.values[j] = phi(out.nodes()[j]);
        return u;
    }
    const double R = norm_truncation_radius(phi, 2.0);
    SpectralProfile probe = hankel_transform(phi, 1.0, bopt);
    const double rho_max = probe.rho_max();
    const double reach = 1.3 * (R + 2.0 * std::abs(t) * rho_max) + 2.0;
    const double cost_fresnel =
        (R + std::min(out.r_max(), reach)) * R / (4.0 * std::abs(t));
    const double cost_spectral = rho_max * (2.0 * std::abs(t) * rho_max + out.r_max());
    if (cost_fresnel <= cost_spectral) return schrodinger_fresnel(phi, t, out, reach);
    // spectral route: frequency grid resolving the quadratic phase
    const double osc = 2.0 * std::abs(t) * rho_max + out.r_max() + 1.0;
    SpectralProfile spec = hankel_transform(phi, spectral_grid(rho_max, osc), osc, bopt);
    ComplexProfile u{n, out, {}};
    u.values = inverse_hankel_multiplied(spec, out, [t](double rho) {
        return std::polar(1.0, t * rho * rho);
    });
    return u;
}

/// Radial grid for Schroedinger fields up to time t_max: the data spreads to
/// r ~ 2 t rho, so the extent follows the band; |u| varies on the scale of the
/// data, not of the phase, so panels follow the initial profile.
inline RadialGrid schrodinger_field_grid(const RadialProfile& phi, double t_max, double rho_bulk,
                                         int zero_levels = 30) {
    const double R = norm_truncation_radius(phi, 2.0);
    const double extent = R * 2.0 + 2.0 * t_max * rho_bulk + 1.0;
    const double width = std::max(R / 12.0, extent / 2400.0);
    const double head = std::min(0.25 * extent, width);
    std::vector<Panel> panels = graded_panels(0.0, head, false, 0.3, zero_levels);
    append_panels(panels, enforce_max_width({{head, extent}}, width));
    return RadialGrid::from_panels(panels, 5, extent);
}

// ---------------------------------------------------------------------------
// Space-time fields sampled on quadrature time grids.
// ---------------------------------------------------------------------------

struct TimeGrid {
    std::vector<double> nodes;
    std::vector<double> weights;
    double t0 = 0.0, t1 = 0.0;
};

/// Gauss panels in time; panel width follows the structure scale of the
/// spatial norms (the data transit time), not the carrier oscillation.
inline TimeGrid time_panels(double t0, double t1, double structure_scale, int order = 4) {
    TimeGrid tg;
    tg.t0 = t0;
    tg.t1 = t1;
    const int count =
        std::max(6, static_cast<int>(std::ceil((t1 - t0) / std::max(structure_scale, 1e-6) * 3.0)));
    const std::vector<Panel> panels = uniform_panels(t0, t1, std::min(count, 4000));
    const GaussRule& rule = gauss_legendre(order);
    for (const Panel& p : panels) {
        const double mid = 0.5 * (p.a + p.b), hl = 0.5 * (p.b - p.a);
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            tg.nodes.push_back(mid + hl * rule.nodes[k]);
            tg.weights.push_back(hl * rule.weights[k]);
        }
    }
    return tg;
}

/// Geometric time panels for integrands with power-law time decay.
inline TimeGrid geometric_time_panels(double t0, double t1, double first_width, int per_decade = 8,
                                      int order = 4) {
    TimeGrid tg;
    tg.t0 = t0;
    tg.t1 = t1;
    std::vector<Panel> panels;
    double a = t0, w = first_width;
    const double grow = std::pow(10.0, 1.0 / per_decade);
    while (a + w < t1) {
        panels.push_back({a, a + w});
        a += w;
        w *= grow;
    }
    panels.push_back({a, t1});
    const GaussRule& rule = gauss_legendre(order);
    for (const Panel& p : panels) {
        const double mid = 0.5 * (p.a + p.b), hl = 0.5 * (p.b - p.a);
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            tg.nodes.push_back(mid + hl * rule.nodes[k]);
            tg.weights.push_back(hl * rule.weights[k]);
        }
    }
    return tg;
}

inline SpaceTimeField propagate_wave_field(const RadialProfile& data, WaveKind kind,
                                           const TimeGrid& tg, const RadialGrid& rgrid,
                                           const BandOptions& bopt = {}) {
    WavePlan plan(data, std::max(std::abs(tg.t0), std::abs(tg.t1)), rgrid, bopt);
    std::vector<std::complex<double>> values(tg.nodes.size() * rgrid.size());
    for (std::size_t i = 0; i < tg.nodes.size(); ++i) {
        ComplexProfile u = plan.wave(tg.nodes[i], kind);
        std::copy(u.values.begin(), u.values.end(), values.begin() + i * rgrid.size());
    }
    return SpaceTimeField(data.dim(), tg.nodes, tg.weights, rgrid, std::move(values));
}

inline SpaceTimeField propagate_schrodinger_field(const RadialProfile& data, const TimeGrid& tg,
                                                  const RadialGrid& rgrid,
                                                  const BandOptions& bopt = {}) {
    std::vector<std::complex<double>> values(tg.nodes.size() * rgrid.size());
    for (std::size_t i = 0; i < tg.nodes.size(); ++i) {
        ComplexProfile u = schrodinger_propagator(data, tg.nodes[i], rgrid, bopt);
        std::copy(u.values.begin(), u.values.end(), values.begin() + i * rgrid.size());
    }
    return SpaceTimeField(data.dim(), tg.nodes, tg.weights, rgrid, std::move(values));
}

}  // namespace radstri
