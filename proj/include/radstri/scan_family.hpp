#pragma once

#include <vector>

#include "radstri/maximal.hpp"
#include "radstri/profile.hpp"
#include "radstri/riesz.hpp"

namespace radstri {

// ---------------------------------------------------------------------------
// The versioned scan family: fixed so suprema are reproducible across runs.
//   {gaussian(1/2), gaussian(1), gaussian(2)}
//   {bump(0.5,0.3), bump(1,0.5), bump(2,0.5)}
//   {smoothed unit-ball indicator, realized as a sampled profile}
// ---------------------------------------------------------------------------

inline constexpr int scan_family_version = 1;

/// Smooth cutoff: 1 on [0, R-h], mollifier roll-off on [R-h, R], 0 beyond.
inline RadialProfile smoothed_ball(int n, double radius = 1.0, double edge = 0.25,
                                   int samples = 2048) {
    std::vector<double> nodes(samples), vals(samples);
    for (int i = 0; i < samples; ++i) {
        const double r = radius * (i + 1.0) / samples;
        nodes[i] = r;
        if (r <= radius - edge) {
            vals[i] = 1.0;
        } else {
            const double z = (r - (radius - edge)) / edge;  // 0..1 across the roll-off
            vals[i] = mollifier_shape(z) / mollifier_shape(0.0);
        }
    }
    return RadialProfile::sampled(n, std::move(nodes), std::move(vals));
}

inline std::vector<RadialProfile> scan_family(int n) {
    return {
        RadialProfile::gaussian(n, 0.5), RadialProfile::gaussian(n, 1.0),
        RadialProfile::gaussian(n, 2.0), RadialProfile::bump(n, 0.5, 0.3),
        RadialProfile::bump(n, 1.0, 0.5), RadialProfile::bump(n, 2.0, 0.5),
        smoothed_ball(n),
    };
}

/// Smooth compactly supported members only (oracle comparisons, scans whose
/// accuracy checks assume smooth data).
inline std::vector<RadialProfile> smooth_compact_family(int n) {
    return {RadialProfile::bump(n, 0.5, 0.3), RadialProfile::bump(n, 1.0, 0.5),
            smoothed_ball(n)};
}

/// HLS exponent test set (admissible tuples; mu stays well inside (0, 1)).
inline std::vector<HlsExponents> hls_exponent_set(int n) {
    if (n == 2)
        return {
            {2, 2.0, 4.0, 0.0, 0.0},     // mu = 1/4
            {2, 2.0, 3.0, 0.25, 0.1},    // mu = 0.5166..
        };
    return {
        {n, 2.0, 4.0, 0.0, 0.0},         // mu = 1/4
        {n, 2.0, 4.0, 0.25, 0.15},       // mu = 0.65
        {n, 1.5, 3.0, 0.0, 0.2},         // mu = 0.5333..
    };
}

/// Muckenhoupt (p, a) test tuples: all admissible.
inline std::vector<std::pair<double, double>> muckenhoupt_tuples() {
    return {{2.0, 0.0}, {2.0, 0.5}, {4.0 / 3.0, -0.2}, {4.0, 2.5}};
}

/// Line-profile test family for the maximal operators.
inline std::vector<LineProfile> maximal_family() {
    std::vector<LineProfile> fam;
    fam.push_back(LineProfile::from_function(
        [](double t) { return std::abs(t) <= 1.0 ? 1.0 : 0.0; }, -2.0, 2.0, 2049));
    fam.push_back(LineProfile::from_function(
        [](double t) { return mollifier_shape(t); }, -1.5, 1.5, 2049));
    fam.push_back(LineProfile::from_function(
        [](double t) { return std::exp(-0.5 * t * t); }, -8.0, 8.0, 2049));
    fam.push_back(LineProfile::from_function(
        [](double t) { return (t >= 1.0 && t <= 2.0) ? 1.0 : 0.0; }, 0.5, 2.5, 1025));
    return fam;
}

}  // namespace radstri
