#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "radstri/common.hpp"

namespace radstri {

namespace detail {

/// Piecewise-linear interpolation table with ascending abscissae.
struct SampleTable {
    std::vector<double> x;
    std::vector<double> y;

    double operator()(double t) const {
        if (x.empty()) return 0.0;
        if (t <= x.front() || t >= x.back()) {
            // constant extrapolation only at the exact ends, zero beyond
            if (t < x.front() || t > x.back()) return 0.0;
            return t == x.front() ? y.front() : y.back();
        }
        const auto it = std::upper_bound(x.begin(), x.end(), t);
        const std::size_t i = static_cast<std::size_t>(it - x.begin());
        const double w = (t - x[i - 1]) / (x[i] - x[i - 1]);
        return y[i - 1] + w * (y[i] - y[i - 1]);
    }
};

}  // namespace detail

/// Standard mollifier shape on [-1, 1], normalized so the peak is exp(-1).
inline double mollifier_shape(double z) {
    const double z2 = z * z;
    if (z2 >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - z2));
}

// ---------------------------------------------------------------------------
// RadialProfile: a radial function on R^n given by its 1-D profile w(lambda).
// Immutable value type; `amplitude` carries scalar multiples so dilations of
// every kind stay inside the family.
// ---------------------------------------------------------------------------

class RadialProfile {
  public:
    enum class Kind { gaussian, bump, ball_indicator, power_cutoff, sampled };

    static RadialProfile gaussian(int n, double sigma) {
        check_dim(n);
        if (sigma <= 0) throw InputError("gaussian: sigma must be positive");
        RadialProfile p(n, Kind::gaussian);
        p.p1_ = sigma;
        return p;
    }

    /// Smooth bump supported on [center - width, center + width].
    static RadialProfile bump(int n, double center, double width) {
        check_dim(n);
        if (width <= 0 || center < 0) throw InputError("bump: need width > 0, center >= 0");
        RadialProfile p(n, Kind::bump);
        p.p1_ = center;
        p.p2_ = width;
        return p;
    }

    static RadialProfile ball_indicator(int n, double radius) {
        check_dim(n);
        if (radius <= 0) throw InputError("ball_indicator: radius must be positive");
        RadialProfile p(n, Kind::ball_indicator);
        p.p1_ = radius;
        return p;
    }

    /// w(lambda) = lambda^a on [0, radius], zero beyond.
    static RadialProfile power_cutoff(int n, double a, double radius) {
        check_dim(n);
        if (radius <= 0) throw InputError("power_cutoff: radius must be positive");
        RadialProfile p(n, Kind::power_cutoff);
        p.p1_ = a;
        p.p2_ = radius;
        return p;
    }

    static RadialProfile sampled(int n, std::vector<double> nodes, std::vector<double> values) {
        check_dim(n);
        if (nodes.size() != values.size() || nodes.size() < 2)
            throw InputError("sampled: need >= 2 matching nodes/values");
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
            if (!(nodes[i] < nodes[i + 1])) throw InputError("sampled: nodes must be ascending");
        if (nodes.front() < 0) throw InputError("sampled: nodes must be non-negative");
        RadialProfile p(n, Kind::sampled);
        auto table = std::make_shared<detail::SampleTable>();
        table->x = std::move(nodes);
        table->y = std::move(values);
        p.table_ = std::move(table);
        return p;
    }

    static RadialProfile zero(int n) { return ball_indicator(n, 1.0).scaled(0.0); }

    double operator()(double lam) const {
        double v = 0.0;
        switch (kind_) {
            case Kind::gaussian:
                v = std::exp(-lam * lam / (2.0 * p1_ * p1_));
                break;
            case Kind::bump:
                v = mollifier_shape((lam - p1_) / p2_);
                break;
            case Kind::ball_indicator:
                v = lam <= p1_ ? 1.0 : 0.0;
                break;
            case Kind::power_cutoff:
                v = lam <= p2_ ? std::pow(lam, p1_) : 0.0;
                break;
            case Kind::sampled:
                v = (*table_)(lam);
                break;
        }
        return amplitude_ * v;
    }

    int dim() const { return n_; }
    Kind kind() const { return kind_; }
    double amplitude() const { return amplitude_; }

    bool compactly_supported() const { return kind_ != Kind::gaussian; }

    /// Radius beyond which the profile is exactly zero (compact kinds) or
    /// |w| <= eps * amplitude (gaussian).
    double tail_radius(double eps = 1e-14) const {
        switch (kind_) {
            case Kind::gaussian:
                return p1_ * std::sqrt(-2.0 * std::log(std::max(eps, 1e-300)));
            case Kind::bump:
                return p1_ + p2_;
            case Kind::ball_indicator:
                return p1_;
            case Kind::power_cutoff:
                return p2_;
            case Kind::sampled:
                return table_->x.back();
        }
        return 0.0;
    }

    /// Radii where the profile is not smooth (jumps or kinks); quadrature
    /// panels are split there.
    std::vector<double> breakpoints() const {
        switch (kind_) {
            case Kind::gaussian:
                return {};
            case Kind::bump:
                return {p1_ - p2_, p1_ + p2_};
            case Kind::ball_indicator:
                return {p1_};
            case Kind::power_cutoff:
                return {p2_};
            case Kind::sampled:
                return {table_->x.front(), table_->x.back()};
        }
        return {};
    }

    bool has_jump() const { return kind_ == Kind::ball_indicator || kind_ == Kind::power_cutoff; }

    /// Profile r -> w(lam * r). Stays in the same kind; power_cutoff picks up
    /// an amplitude factor lam^a.
    RadialProfile dilated(double lam) const {
        if (lam <= 0) throw InputError("dilated: scale must be positive");
        RadialProfile p(*this);
        switch (kind_) {
            case Kind::gaussian:
                p.p1_ = p1_ / lam;
                break;
            case Kind::bump:
                p.p1_ = p1_ / lam;
                p.p2_ = p2_ / lam;
                break;
            case Kind::ball_indicator:
                p.p1_ = p1_ / lam;
                break;
            case Kind::power_cutoff:
                p.p2_ = p2_ / lam;
                p.amplitude_ *= std::pow(lam, p1_);
                break;
            case Kind::sampled: {
                auto table = std::make_shared<detail::SampleTable>(*table_);
                for (double& x : table->x) x /= lam;
                p.table_ = std::move(table);
                break;
            }
        }
        return p;
    }

    RadialProfile scaled(double c) const {
        RadialProfile p(*this);
        p.amplitude_ *= c;
        return p;
    }

    std::string kind_name() const {
        switch (kind_) {
            case Kind::gaussian: return "gaussian";
            case Kind::bump: return "bump";
            case Kind::ball_indicator: return "ball_indicator";
            case Kind::power_cutoff: return "power_cutoff";
            case Kind::sampled: return "sampled";
        }
        return "?";
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["kind"] = kind_name();
        j["n"] = n_;
        j["amplitude"] = amplitude_;
        switch (kind_) {
            case Kind::gaussian: j["sigma"] = p1_; break;
            case Kind::bump: j["center"] = p1_; j["width"] = p2_; break;
            case Kind::ball_indicator: j["radius"] = p1_; break;
            case Kind::power_cutoff: j["exponent"] = p1_; j["radius"] = p2_; break;
            case Kind::sampled: j["nodes"] = table_->x; j["values"] = table_->y; break;
        }
        return j;
    }

    static RadialProfile from_json(const nlohmann::json& j) {
        const std::string kind = j.at("kind").get<std::string>();
        const int n = j.at("n").get<int>();
        RadialProfile p = [&] {
            if (kind == "gaussian") return gaussian(n, j.at("sigma").get<double>());
            if (kind == "bump") return bump(n, j.at("center").get<double>(), j.at("width").get<double>());
            if (kind == "ball_indicator") return ball_indicator(n, j.at("radius").get<double>());
            if (kind == "power_cutoff")
                return power_cutoff(n, j.at("exponent").get<double>(), j.at("radius").get<double>());
            if (kind == "sampled")
                return sampled(n, j.at("nodes").get<std::vector<double>>(),
                               j.at("values").get<std::vector<double>>());
            throw InputError("profile kind '" + kind + "' not recognized");
        }();
        if (j.contains("amplitude")) p.amplitude_ = j["amplitude"].get<double>();
        return p;
    }

  private:
    RadialProfile(int n, Kind k) : n_(n), kind_(k) {}
    static void check_dim(int n) {
        if (n < 1) throw InputError("RadialProfile: dimension must be >= 1");
    }

    int n_;
    Kind kind_;
    double amplitude_ = 1.0;
    double p1_ = 0.0;
    double p2_ = 0.0;
    std::shared_ptr<const detail::SampleTable> table_;  // sampled kind only
};

// ---------------------------------------------------------------------------
// Profile1D: closed-form test functions on the line, used by the 1-D
// Stein-Weiss ratio. Supports indicator / bump / gaussian shapes at an offset.
// ---------------------------------------------------------------------------

class Profile1D {
  public:
    enum class Kind { indicator, bump, gaussian };

    static Profile1D indicator(double a, double b) {
        if (!(a < b)) throw InputError("Profile1D::indicator: need a < b");
        return Profile1D(Kind::indicator, a, b);
    }
    static Profile1D bump(double center, double width) {
        if (width <= 0) throw InputError("Profile1D::bump: width must be positive");
        return Profile1D(Kind::bump, center, width);
    }
    static Profile1D gaussian(double center, double sigma) {
        if (sigma <= 0) throw InputError("Profile1D::gaussian: sigma must be positive");
        return Profile1D(Kind::gaussian, center, sigma);
    }

    double operator()(double t) const {
        switch (kind_) {
            case Kind::indicator: return (t >= p1_ && t <= p2_) ? amplitude_ : 0.0;
            case Kind::bump: return amplitude_ * mollifier_shape((t - p1_) / p2_);
            case Kind::gaussian: {
                const double z = (t - p1_) / p2_;
                return amplitude_ * std::exp(-0.5 * z * z);
            }
        }
        return 0.0;
    }

    /// [lo, hi] containing the (numerical) support.
    std::pair<double, double> support(double eps = 1e-14) const {
        switch (kind_) {
            case Kind::indicator: return {p1_, p2_};
            case Kind::bump: return {p1_ - p2_, p1_ + p2_};
            case Kind::gaussian: {
                const double r = p2_ * std::sqrt(-2.0 * std::log(std::max(eps, 1e-300)));
                return {p1_ - r, p1_ + r};
            }
        }
        return {0, 0};
    }

    std::vector<double> breakpoints() const {
        auto [lo, hi] = support();
        return {lo, hi};
    }

    Profile1D scaled(double c) const {
        Profile1D p(*this);
        p.amplitude_ *= c;
        return p;
    }

    bool is_zero() const { return amplitude_ == 0.0; }

  private:
    Profile1D(Kind k, double a, double b) : kind_(k), p1_(a), p2_(b) {}
    Kind kind_;
    double p1_, p2_;
    double amplitude_ = 1.0;
};

}  // namespace radstri
