#pragma once

#include <complex>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "radstri/grid.hpp"
#include "radstri/profile.hpp"

namespace radstri {

/// Truncation radius for norm integrals of a profile: compact kinds use their
/// support, the Gaussian is cut where the analytic tail bound drops below
/// 1e-18^(1/p) of the peak (far under the 1e-12 budget of any norm here).
inline double norm_truncation_radius(const RadialProfile& w, double p) {
    if (w.compactly_supported()) return w.tail_radius();
    const double pp = std::isfinite(p) ? std::max(p, 1.0) : 1.0;
    return w.tail_radius(std::pow(1e-18, 1.0 / pp)) + 3.0 * w.tail_radius(std::exp(-0.5));
}

/// Quadrature grid adapted to a profile: panels split at its breakpoints,
/// refined toward r = 0 (power weights) and toward each extra singular point.
inline RadialGrid profile_norm_grid(const RadialProfile& w, double p = 2.0,
                                    std::span<const double> extra_singular = {},
                                    int panels_hint = 48) {
    const double R = norm_truncation_radius(w, p);
    std::vector<double> cuts = w.breakpoints();
    cuts.insert(cuts.end(), extra_singular.begin(), extra_singular.end());
    auto is_cut = [&](double x) {
        for (double c : cuts)
            if (x == c) return true;
        return false;
    };
    std::vector<Panel> panels;
    for (const Panel& seg : panels_split_at(0.0, R, cuts)) {
        const double len = seg.b - seg.a;
        const bool grade_left = seg.a == 0.0 || is_cut(seg.a);
        const bool grade_right = is_cut(seg.b);
        const double mid = seg.a + 0.5 * len;
        if (grade_left)
            append_panels(panels, graded_panels(seg.a, mid, false, seg.a == 0.0 ? 0.22 : 0.25,
                                                seg.a == 0.0 ? 36 : 24));
        else
            append_panels(panels, uniform_panels(seg.a, mid, std::max(2, panels_hint / 8)));
        if (grade_right)
            append_panels(panels, graded_panels(mid, seg.b, true, 0.25, 24));
        else
            append_panels(panels, uniform_panels(mid, seg.b, std::max(2, panels_hint / 8)));
    }
    const double width_cap = R / std::max(8, panels_hint / 4);
    return RadialGrid::from_panels(enforce_max_width(panels, width_cap), 6, R);
}

namespace detail {

inline void check_lp_exponent(double p) {
    if (std::isnan(p) || p < 1.0)
        throw DomainError("Lp exponent must be >= 1 (or infinity)");
}

}  // namespace detail

/// || |x|^a v ||_{L^p(R^n)} for v(x) = w(|x|), as a radial quadrature
///    ( |S^{n-1}| int_0^Rmax |w|^p lambda^{pa+n-1} dlambda )^{1/p} .
/// p = infinity returns the essential sup of |lambda^a w| over grid nodes.
inline double weighted_lp_norm(const RadialProfile& w, double p, double a, const RadialGrid& grid) {
    detail::check_lp_exponent(p);
    const int n = w.dim();
    if (!std::isfinite(p)) {
        double sup = 0.0;
        for (double lam : grid.nodes()) sup = std::max(sup, std::pow(lam, a) * std::abs(w(lam)));
        return sup;
    }
    if (p * a + n <= 0.0 && std::abs(w(grid.nodes().front() * 1e-3)) > 0.0)
        throw DivergentIntegralError("weighted_lp_norm: weight exponent not integrable at 0");
    const double ex = p * a + n - 1.0;
    const double integral =
        grid.integrate([&](double lam) { return std::pow(std::abs(w(lam)), p) * std::pow(lam, ex); });
    return std::pow(sphere_area(n) * integral, 1.0 / p);
}

inline double weighted_lp_norm(const RadialProfile& w, double p, double a) {
    return weighted_lp_norm(w, p, a, profile_norm_grid(w, p));
}

/// Same norm for field samples |u(r_i)| given on a grid.
inline double weighted_lp_norm_samples(std::span<const double> abs_values, const RadialGrid& grid,
                                       int n, double p, double a) {
    detail::check_lp_exponent(p);
    if (abs_values.size() != grid.size()) throw InputError("weighted_lp_norm_samples: size mismatch");
    if (!std::isfinite(p)) {
        double sup = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            sup = std::max(sup, std::pow(grid.nodes()[i], a) * abs_values[i]);
        return sup;
    }
    const double ex = p * a + n - 1.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        sum += grid.weights()[i] * std::pow(abs_values[i], p) * std::pow(grid.nodes()[i], ex);
    return std::pow(sphere_area(n) * sum, 1.0 / p);
}

// ---------------------------------------------------------------------------
// Mixed space-time norms.
// ---------------------------------------------------------------------------

struct MixedNormSpec {
    double q = 2.0;            // time exponent (may be inf)
    double p = 2.0;            // space exponent (may be inf)
    double space_weight = 0.0; // exponent a of |x|^a inside the spatial norm
    double t0 = 0.0;
    double t1 = 1.0;
};

/// Samples u(t_i, r_j) of a radial space-time field. When built by the
/// propagation drivers the time nodes carry quadrature weights for the
/// covered interval; otherwise mixed_norm falls back to the trapezoid rule.
class SpaceTimeField {
  public:
    /// When `time_weights` are given they form a quadrature covering
    /// [cover0, cover1] (the nodes themselves stay interior to it).
    SpaceTimeField(int n, std::vector<double> times, std::vector<double> time_weights,
                   RadialGrid grid, std::vector<std::complex<double>> values,
                   double cover0 = std::numeric_limits<double>::quiet_NaN(),
                   double cover1 = std::numeric_limits<double>::quiet_NaN())
        : n_(n), times_(std::move(times)), time_weights_(std::move(time_weights)),
          grid_(std::move(grid)), values_(std::move(values)) {
        if (times_.empty()) throw InputError("SpaceTimeField: no time samples");
        for (std::size_t i = 0; i + 1 < times_.size(); ++i)
            if (!(times_[i] < times_[i + 1])) throw InputError("SpaceTimeField: times must ascend");
        if (!time_weights_.empty() && time_weights_.size() != times_.size())
            throw InputError("SpaceTimeField: time weight count mismatch");
        if (values_.size() != times_.size() * grid_.size())
            throw InputError("SpaceTimeField: value matrix shape mismatch");
        cover0_ = std::isnan(cover0) ? times_.front() : cover0;
        cover1_ = std::isnan(cover1) ? times_.back() : cover1;
    }

    double cover0() const { return cover0_; }
    double cover1() const { return cover1_; }

    int dim() const { return n_; }
    std::span<const double> times() const { return times_; }
    std::span<const double> time_weights() const { return time_weights_; }
    const RadialGrid& grid() const { return grid_; }
    std::span<const std::complex<double>> slice(std::size_t i) const {
        return {values_.data() + i * grid_.size(), grid_.size()};
    }

    double spatial_norm(std::size_t i, double p, double a) const {
        std::vector<double> mag(grid_.size());
        const auto s = slice(i);
        for (std::size_t j = 0; j < mag.size(); ++j) mag[j] = std::abs(s[j]);
        return weighted_lp_norm_samples(mag, grid_, n_, p, a);
    }

    void write_csv(std::ostream& os) const {
        os << "t,r,re_u,im_u\n";
        for (std::size_t i = 0; i < times_.size(); ++i) {
            const auto s = slice(i);
            for (std::size_t j = 0; j < grid_.size(); ++j)
                os << times_[i] << ',' << grid_.nodes()[j] << ',' << s[j].real() << ','
                   << s[j].imag() << '\n';
        }
    }

  private:
    int n_;
    std::vector<double> times_;
    std::vector<double> time_weights_;
    RadialGrid grid_;
    std::vector<std::complex<double>> values_;
    double cover0_ = 0.0;
    double cover1_ = 0.0;
};

/// || u ||_{L^q((t0,t1); L^p(|x|^a))}: composite quadrature in time of the
/// spatial norm to the q-th power, then the q-th root.
inline double mixed_norm(const SpaceTimeField& u, const MixedNormSpec& spec) {
    detail::check_lp_exponent(spec.q);
    detail::check_lp_exponent(spec.p);
    const auto times = u.times();
    if (spec.t0 < u.cover0() - 1e-9 || spec.t1 > u.cover1() + 1e-9)
        throw InputError("mixed_norm: time interval outside sampled range");

    std::vector<double> g(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) g[i] = u.spatial_norm(i, spec.p, spec.space_weight);

    if (!std::isfinite(spec.q)) {
        double sup = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i)
            if (times[i] >= spec.t0 - 1e-12 && times[i] <= spec.t1 + 1e-12) sup = std::max(sup, g[i]);
        return sup;
    }

    double sum = 0.0;
    if (!u.time_weights().empty()) {
        for (std::size_t i = 0; i < times.size(); ++i)
            sum += u.time_weights()[i] * std::pow(g[i], spec.q);
    } else {
        for (std::size_t i = 0; i + 1 < times.size(); ++i) {
            const double a = std::max(times[i], spec.t0), b = std::min(times[i + 1], spec.t1);
            if (b <= a) continue;
            sum += 0.5 * (b - a) * (std::pow(g[i], spec.q) + std::pow(g[i + 1], spec.q));
        }
    }
    return std::pow(sum, 1.0 / spec.q);
}

}  // namespace radstri
