#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "radstri/grid.hpp"
#include "radstri/report.hpp"

namespace radstri {

// ---------------------------------------------------------------------------
// Sampled functions on the line and the two maximal operators
//   (M f)(t)      = sup_{sigma>0} (1/2sigma) int_{t-sigma}^{t+sigma} |f|
//   (M_1/2 f)(t)  = sup_{sigma>0} (1/2sigma) int |sigma/(eta-t)|^{1/2} |f(eta)| deta
// over |eta - t| <= sigma. The modulus |f| is treated as piecewise linear
// between the sample nodes; window integrals are exact per cell (the
// |eta-t|^{-1/2} factor has an elementary antiderivative against linear f).
// The sigma-supremum runs over a geometric ladder with ratio 2^{1/4} from one
// grid cell up to the farthest reach of the support, so the reported value is
// a lower bound of the true supremum within one ladder step.
// ---------------------------------------------------------------------------

class LineProfile {
  public:
    LineProfile(std::vector<double> nodes, std::vector<double> values, bool even_extension = false)
        : nodes_(std::move(nodes)), values_(std::move(values)), even_(even_extension) {
        if (nodes_.size() < 2 || nodes_.size() != values_.size())
            throw InputError("LineProfile: need >= 2 matching nodes/values");
        for (std::size_t i = 0; i + 1 < nodes_.size(); ++i)
            if (!(nodes_[i] < nodes_[i + 1])) throw InputError("LineProfile: nodes must ascend");
        rebuild_prefix();
    }

    /// The g* construction: reflect a half-line profile through the origin.
    static LineProfile even_from_halfline(std::vector<double> pos_nodes,
                                          std::vector<double> values) {
        if (pos_nodes.empty() || pos_nodes.front() <= 0.0)
            throw InputError("even_from_halfline: nodes must be positive");
        std::vector<double> nodes, vals;
        for (std::size_t i = pos_nodes.size(); i-- > 0;) {
            nodes.push_back(-pos_nodes[i]);
            vals.push_back(values[i]);
        }
        for (std::size_t i = 0; i < pos_nodes.size(); ++i) {
            nodes.push_back(pos_nodes[i]);
            vals.push_back(values[i]);
        }
        return LineProfile(std::move(nodes), std::move(vals), true);
    }

    template <class F>
    static LineProfile from_function(F&& f, double lo, double hi, std::size_t count) {
        std::vector<double> nodes(count), vals(count);
        for (std::size_t i = 0; i < count; ++i) {
            nodes[i] = lo + (hi - lo) * i / (count - 1);
            vals[i] = f(nodes[i]);
        }
        return LineProfile(std::move(nodes), std::move(vals));
    }

    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> values() const { return values_; }
    bool even_extension() const { return even_; }
    double min_cell() const {
        double m = inf;
        for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) m = std::min(m, nodes_[i + 1] - nodes_[i]);
        return m;
    }

    double operator()(double t) const {
        if (t <= nodes_.front() || t >= nodes_.back()) {
            return (t < nodes_.front() || t > nodes_.back())
                       ? 0.0
                       : (t == nodes_.front() ? values_.front() : values_.back());
        }
        const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
        const std::size_t i = static_cast<std::size_t>(it - nodes_.begin());
        const double u = (t - nodes_[i - 1]) / (nodes_[i] - nodes_[i - 1]);
        return values_[i - 1] + u * (values_[i] - values_[i - 1]);
    }

    LineProfile scaled(double c) const {
        LineProfile p(*this);
        for (double& v : p.values_) v *= c;
        p.rebuild_prefix();
        return p;
    }

    LineProfile dilated(double lam) const {  // f(. / lam) sampled on the dilated grid
        LineProfile p(*this);
        for (double& x : p.nodes_) x *= lam;
        p.rebuild_prefix();
        return p;
    }

    LineProfile translated(double c) const {
        LineProfile p(*this);
        for (double& x : p.nodes_) x += c;
        p.rebuild_prefix();
        return p;
    }

    bool is_zero() const {
        for (double v : values_)
            if (v != 0.0) return false;
        return true;
    }

    /// int_a^b |f|, with |f| piecewise linear on the sample cells, via a
    /// prefix sum of |f| (O(log) per window).
    double abs_window_integral(double a, double b) const {
        a = std::max(a, nodes_.front());
        b = std::min(b, nodes_.back());
        if (b <= a) return 0.0;
        return abs_prefix(b) - abs_prefix(a);
    }

    /// int_a^b |f(eta)| |eta - t|^{-1/2} deta, exact per cell for linear |f|.
    double singular_window_integral(double a, double b, double t) const {
        a = std::max(a, nodes_.front());
        b = std::min(b, nodes_.back());
        if (b <= a) return 0.0;
        auto K0 = [](double u) { return u >= 0.0 ? 2.0 * std::sqrt(u) : -2.0 * std::sqrt(-u); };
        auto K1 = [](double u) { return (2.0 / 3.0) * std::pow(std::abs(u), 1.5); };
        double sum = 0.0;
        const auto start =
            std::upper_bound(nodes_.begin(), nodes_.end(), a) - nodes_.begin() - 1;
        for (std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(start, 0));
             i + 1 < nodes_.size() && nodes_[i] < b; ++i) {
            const double x0 = nodes_[i], x1 = nodes_[i + 1];
            const double lo = std::max(a, x0), hi = std::min(b, x1);
            if (hi <= lo) continue;
            const double g0 = std::abs(values_[i]), g1 = std::abs(values_[i + 1]);
            const double slope = (g1 - g0) / (x1 - x0);
            // |f|(eta) = d0 + d1 (eta - t) on this cell
            const double d1 = slope;
            const double d0 = g0 + slope * (t - x0);
            sum += d0 * (K0(hi - t) - K0(lo - t)) + d1 * (K1(hi - t) - K1(lo - t));
        }
        return sum;
    }

  private:
    void rebuild_prefix() {
        prefix_.assign(nodes_.size(), 0.0);
        for (std::size_t i = 0; i + 1 < nodes_.size(); ++i)
            prefix_[i + 1] = prefix_[i] + 0.5 * (std::abs(values_[i]) + std::abs(values_[i + 1])) *
                                              (nodes_[i + 1] - nodes_[i]);
    }

    /// int_{x_0}^{x} |f|, quadratic inside a cell.
    double abs_prefix(double x) const {
        if (x <= nodes_.front()) return 0.0;
        if (x >= nodes_.back()) return prefix_.back();
        const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - nodes_.begin()) - 1;
        const double x0 = nodes_[i], x1 = nodes_[i + 1];
        const double g0 = std::abs(values_[i]), g1 = std::abs(values_[i + 1]);
        const double slope = (g1 - g0) / (x1 - x0);
        const double u = x - x0;
        return prefix_[i] + g0 * u + 0.5 * slope * u * u;
    }

    std::vector<double> nodes_;
    std::vector<double> values_;
    std::vector<double> prefix_;
    bool even_ = false;
};

namespace detail {

template <class WindowValue>
double ladder_supremum(const LineProfile& f, double t, WindowValue&& value) {
    const double reach =
        std::max(std::abs(t - f.nodes().front()), std::abs(f.nodes().back() - t));
    const double sigma_min = std::max(f.min_cell(), 1e-12 * reach);
    if (!(reach > 0.0)) return 0.0;
    double sup = 0.0, best_sigma = sigma_min;
    const double ratio = std::pow(2.0, 0.25);
    for (double sigma = sigma_min; sigma <= reach * ratio; sigma *= ratio) {
        const double v = value(sigma);
        if (v > sup) {
            sup = v;
            best_sigma = sigma;
        }
    }
    // sharpen the winning rung by ternary search on the bracketing interval
    double lo = best_sigma / ratio, hi = best_sigma * ratio;
    for (int it = 0; it < 24; ++it) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        const double v1 = value(m1), v2 = value(m2);
        sup = std::max({sup, v1, v2});
        if (v1 < v2)
            lo = m1;
        else
            hi = m2;
    }
    return sup;
}

}  // namespace detail

/// Hardy-Littlewood maximal function at a point.
inline double hl_maximal(const LineProfile& f, double t) {
    if (f.nodes().empty()) throw InputError("hl_maximal: empty profile");
    return detail::ladder_supremum(f, t, [&](double sigma) {
        return f.abs_window_integral(t - sigma, t + sigma) / (2.0 * sigma);
    });
}

/// Singular maximal variant with the |sigma/(eta-t)|^{1/2} factor.
inline double singular_maximal(const LineProfile& f, double t) {
    if (f.nodes().empty()) throw InputError("singular_maximal: empty profile");
    return detail::ladder_supremum(f, t, [&](double sigma) {
        return f.singular_window_integral(t - sigma, t + sigma, t) / (2.0 * std::sqrt(sigma));
    });
}

/// Per-node ratio (M_1/2 f) / (M f) and its supremum (the empirical constant
/// of the pointwise domination).
inline RatioReport pointwise_domination_check(const LineProfile& f,
                                              std::span<const double> eval_nodes) {
    if (f.is_zero()) throw DegenerateInputError("pointwise_domination_check: zero profile");
    RatioReport rep;
    rep.op = "pointwise_domination_2_28";
    rep.samples.resize(eval_nodes.size());
    std::vector<double> pts(eval_nodes.begin(), eval_nodes.end());
    parallel_for(pts.size(), [&](std::size_t i) {
        const double m = hl_maximal(f, pts[i]);
        const double ms = singular_maximal(f, pts[i]);
        rep.samples[i] = {"t", pts[i], ms, m, m > 0.0 ? ms / m : 0.0};
    });
    rep.grid_meta = {{"eval_nodes", double(eval_nodes.size())},
                     {"profile_nodes", double(f.nodes().size())}};
    rep.finalize();
    return rep;
}

/// Weighted maximal-operator ratio
///   || M f ||_{L^p(R, |t|^a dt)} / || f ||_{L^p(R, |t|^a dt)} .
/// The (p, a) tuple is flagged inadmissible outside 1 < p < inf, -1 < a < p-1;
/// the ratio is still computed and reported.
inline RatioReport muckenhoupt_ratio(const LineProfile& f, double p, double a,
                                     int band_panels = 48) {
    if (!(p > 1.0 && std::isfinite(p))) throw DomainError("muckenhoupt_ratio: need 1 < p < inf");
    if (f.is_zero()) throw DegenerateInputError("muckenhoupt_ratio: zero profile");

    const double lo = f.nodes().front(), hi = f.nodes().back();
    const double span = std::max(std::abs(lo), std::abs(hi));
    const double cap = 32.0 * span;

    // || f ||^p from the profile's own cells (|f| linear per cell); the |t|^a
    // factor is handled per cell, singular-point aware at t = 0
    double den = 0.0;
    for (std::size_t i = 0; i + 1 < f.nodes().size(); ++i) {
        const double x0 = f.nodes()[i], x1 = f.nodes()[i + 1];
        if (f.values()[i] == 0.0 && f.values()[i + 1] == 0.0) continue;
        const double g0 = std::abs(f.values()[i]), g1 = std::abs(f.values()[i + 1]);
        auto fp = [&](double t) {
            const double u = (t - x0) / (x1 - x0);
            return std::pow(g0 + u * (g1 - g0), p);
        };
        const bool touches_zero = x0 <= 0.0 && x1 >= 0.0;
        if (!touches_zero || a > -1.0)
            den += singular_power_integral(fp, x0, x1, 0.0, a);
        else
            den = inf;  // weight not integrable against f at the origin
    }

    // || Mf ||^p on a symmetric grid: graded at 0 for the weight, dense across
    // the support band, geometrically coarsening beyond it (Mf ~ mass/2|t|)
    std::vector<Panel> panels;
    const double band_lo = std::min(std::abs(lo), std::abs(hi));
    const double band_hi = span;
    if (lo < 0.0 && hi > 0.0) {
        append_panels(panels, graded_panels(0.0, 0.5 * band_hi, false, 0.3, 30));
        append_panels(panels, uniform_panels(0.5 * band_hi, band_hi, band_panels));
    } else {
        append_panels(panels, graded_panels(0.0, 0.5 * band_lo, false, 0.3, 30));
        append_panels(panels, graded_panels(0.5 * band_lo, band_lo, true, 0.4, 20));
        append_panels(panels, uniform_panels(band_lo, band_hi, band_panels));
    }
    append_panels(panels, graded_panels(band_hi, cap, false, 0.45, 40));
    const RadialGrid half = RadialGrid::from_panels(panels, 6, cap);

    std::vector<double> mf_pos(half.size()), mf_neg(half.size());
    parallel_for(half.size(), [&](std::size_t i) {
        mf_pos[i] = hl_maximal(f, half.nodes()[i]);
        mf_neg[i] = hl_maximal(f, -half.nodes()[i]);
    });

    double num = 0.0, tail_num = 0.0;
    for (std::size_t i = 0; i < half.size(); ++i) {
        const double t = half.nodes()[i], wq = half.weights()[i] * std::pow(t, a);
        num += wq * (std::pow(mf_pos[i], p) + std::pow(mf_neg[i], p));
    }
    // Mf = mass/(2(|t| - lo)) once the window covers the support, so the
    // truncated part has a closed-form estimate; it joins the norm and is
    // reported. Converges iff a < p-1.
    double mass = f.abs_window_integral(lo, hi);
    if (a < p - 1.0) {
        tail_num = 2.0 * std::pow(0.5 * mass, p) * std::pow(cap, a - p + 1.0) / (p - 1.0 - a);
        num += tail_num;
    } else {
        tail_num = inf;
    }

    const double lhs = std::pow(num, 1.0 / p);
    const double rhs = std::pow(den, 1.0 / p);
    if (rhs == 0.0) throw DegenerateInputError("muckenhoupt_ratio: zero norm");

    RatioReport rep;
    rep.op = "muckenhoupt_2_30";
    rep.exponents = {{"p", p}, {"a", a}};
    if (!(a > -1.0)) {
        rep.admissible = false;
        rep.rejection = "a > -1";
    } else if (!(a < p - 1.0)) {
        rep.admissible = false;
        rep.rejection = "a < p - 1";
    }
    rep.samples = {{"profile", 0.0, lhs, rhs, lhs / rhs}};
    rep.grid_meta = {{"t_cap", cap}, {"half_nodes", double(half.size())}};
    rep.tail_bounds = {{"lhs_p_tail", tail_num}};
    rep.finalize();
    return rep;
}

}  // namespace radstri
