#pragma once

#include <span>
#include <vector>

#include <json.hpp>

#include "radstri/common.hpp"
#include "radstri/quadrature.hpp"

namespace radstri {

// ---------------------------------------------------------------------------
// RadialGrid: quadrature nodes/weights on (0, R_max]. Node positions double as
// sample positions for propagated fields, so grids are always built from
// Gauss-Legendre panels (positive weights, no endpoint nodes).
// ---------------------------------------------------------------------------

class RadialGrid {
  public:
    RadialGrid(std::vector<double> nodes, std::vector<double> weights, double r_max)
        : nodes_(std::move(nodes)), weights_(std::move(weights)), r_max_(r_max) {
        if (nodes_.empty()) throw InputError("RadialGrid: empty grid");
        if (nodes_.size() != weights_.size()) throw InputError("RadialGrid: nodes/weights size mismatch");
        if (!(r_max_ > 0)) throw InputError("RadialGrid: R_max must be positive");
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (!(nodes_[i] > 0) || nodes_[i] > r_max_ * (1 + 1e-12))
                throw InputError("RadialGrid: nodes must lie in (0, R_max]");
            if (!(weights_[i] > 0)) throw InputError("RadialGrid: weights must be positive");
            if (i > 0 && !(nodes_[i] > nodes_[i - 1]))
                throw InputError("RadialGrid: nodes must be strictly increasing");
        }
    }

    static RadialGrid from_panels(const std::vector<Panel>& panels, int order, double r_max) {
        const GaussRule& rule = gauss_legendre(order);
        std::vector<double> nodes, weights;
        nodes.reserve(panels.size() * rule.nodes.size());
        weights.reserve(panels.size() * rule.nodes.size());
        for (const Panel& p : panels) {
            const double mid = 0.5 * (p.a + p.b), hl = 0.5 * (p.b - p.a);
            for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
                nodes.push_back(mid + hl * rule.nodes[k]);
                weights.push_back(hl * rule.weights[k]);
            }
        }
        return RadialGrid(std::move(nodes), std::move(weights), r_max);
    }

    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }
    double r_max() const { return r_max_; }
    std::size_t size() const { return nodes_.size(); }

    template <class F>
    double integrate(F&& f) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(nodes_[i]);
        return sum;
    }

    nlohmann::json to_json() const {
        return nlohmann::json{{"nodes", nodes_}, {"weights", weights_}, {"r_max", r_max_}};
    }

    static RadialGrid from_json(const nlohmann::json& j) {
        return RadialGrid(j.at("nodes").get<std::vector<double>>(),
                          j.at("weights").get<std::vector<double>>(), j.at("r_max").get<double>());
    }

  private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
    double r_max_;
};

enum class GridStyle { uniform, log_uniform, composite };

/// Builds a quadrature grid on (0, R_max].
///   uniform     - equal panels.
///   log_uniform - panels log-spaced over ~4 decades plus a stub at 0.
///   composite   - uniform base with geometric refinement toward 0 and toward
///                 each supplied singular point (integrable singularities).
inline RadialGrid make_grid(double r_max, int resolution, GridStyle style,
                            std::span<const double> singular_points = {}) {
    if (!(r_max > 0)) throw InputError("make_grid: R_max must be positive");
    if (resolution < 16) throw InputError("make_grid: resolution must be >= 16");

    switch (style) {
        case GridStyle::uniform: {
            const int order = 4;
            const int count = resolution / order;
            std::vector<Panel> panels = uniform_panels(0.0, r_max, count);
            // distribute any remainder by bumping the first panel's order
            RadialGrid base = RadialGrid::from_panels(panels, order, r_max);
            if (resolution % order == 0) return base;
            std::vector<Panel> first{panels.front()};
            panels.erase(panels.begin());
            RadialGrid head = RadialGrid::from_panels(first, order + resolution % order, r_max);
            std::vector<double> nodes(head.nodes().begin(), head.nodes().end());
            std::vector<double> weights(head.weights().begin(), head.weights().end());
            RadialGrid tail = RadialGrid::from_panels(panels, order, r_max);
            nodes.insert(nodes.end(), tail.nodes().begin(), tail.nodes().end());
            weights.insert(weights.end(), tail.weights().begin(), tail.weights().end());
            return RadialGrid(std::move(nodes), std::move(weights), r_max);
        }
        case GridStyle::log_uniform: {
            const int order = 4;
            const double r_min = r_max * 1e-4;
            const int count = std::max(4, resolution / order - 1);
            std::vector<Panel> panels{{0.0, r_min}};
            const double f = std::pow(r_max / r_min, 1.0 / count);
            double a = r_min;
            for (int k = 0; k < count; ++k) {
                const double b = (k + 1 == count) ? r_max : a * f;
                panels.push_back({a, b});
                a = b;
            }
            return RadialGrid::from_panels(panels, order, r_max);
        }
        case GridStyle::composite: {
            const int order = 4;
            // budget: half the panels to singular-point refinement, rest uniform
            const int total_panels = std::max(8, resolution / order);
            const int refine_levels = 12;
            std::vector<Panel> panels;
            std::vector<double> cuts(singular_points.begin(), singular_points.end());
            std::vector<Panel> segments = panels_split_at(0.0, r_max, cuts);
            const int base_per_segment =
                std::max(2, static_cast<int>(total_panels / (2 * segments.size())));
            for (std::size_t si = 0; si < segments.size(); ++si) {
                const Panel seg = segments[si];
                const bool sing_left =
                    si > 0 || seg.a > 0.0;  // interior cuts and r=0 both get grading
                const bool sing_right = si + 1 < segments.size();
                const double lo = seg.a, hi = seg.b;
                const double mid_lo = sing_left ? lo + 0.25 * (hi - lo) : lo;
                const double mid_hi = sing_right ? hi - 0.25 * (hi - lo) : hi;
                if (sing_left)
                    append_panels(panels, graded_panels(lo, mid_lo, false, 0.25, refine_levels));
                append_panels(panels, uniform_panels(mid_lo, mid_hi, base_per_segment));
                if (sing_right)
                    append_panels(panels, graded_panels(mid_hi, hi, true, 0.25, refine_levels));
            }
            // always resolve r = 0 (weights r^a with a > -1 appear in norms)
            if (segments.front().a == 0.0 && panels.front().a == 0.0) {
                const Panel first = panels.front();
                panels.erase(panels.begin());
                std::vector<Panel> zero_ref = graded_panels(first.a, first.b, false, 0.25, refine_levels);
                panels.insert(panels.begin(), zero_ref.begin(), zero_ref.end());
            }
            std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
            return RadialGrid::from_panels(panels, order, r_max);
        }
    }
    throw InputError("make_grid: unknown style");
}

}  // namespace radstri
