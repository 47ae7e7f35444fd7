#include <catch2/catch_amalgamated.hpp>

#include <complex>

#include "radstri/propagators.hpp"
#include "radstri/scan_family.hpp"
#include "radstri/spectral.hpp"
#include "radstri/wave_explicit.hpp"

using namespace radstri;

namespace {

std::complex<double> gaussian_schrodinger_closed_form(int n, double sigma, double t, double r) {
    // S(t) e^{-a|x|^2} = (1-4iat)^{-n/2} exp(-a|x|^2/(1-4iat)), a = 1/(2 sigma^2)
    const double a = 0.5 / (sigma * sigma);
    const std::complex<double> den(1.0, -4.0 * a * t);
    return std::pow(den, -0.5 * n) * std::exp(-a * r * r / den);
}

}  // namespace

TEST_CASE("hankel transform of the gaussian is a gaussian") {
    for (int n : {1, 2, 3, 4, 5}) {
        const RadialProfile g = RadialProfile::gaussian(n, 1.0);
        const SpectralProfile spec = hankel_transform(g, 8.0);
        const double pref = std::pow(2.0 * pi, 0.5 * n);
        for (std::size_t k = 0; k < spec.freq().size(); k += 9) {
            const double rho = spec.freq().nodes()[k];
            if (rho > 5.0) break;
            CHECK(spec.values()[k] ==
                  Catch::Approx(pref * std::exp(-0.5 * rho * rho)).epsilon(1e-6));
        }
    }
    const SpectralProfile zs = hankel_transform(RadialProfile::zero(3), 8.0);
    for (double v : zs.values()) CHECK(v == 0.0);
}

TEST_CASE("n=3 angular kernel reproduces the sphere-measure identity") {
    // int_{S^2} e^{-i w.xi} dsigma = 4 pi sin|xi| / |xi|; the radial kernel at
    // unit radius is (2pi)^{3/2} rho^{-1/2} J_{1/2}(rho)
    for (double rho : {0.3, 1.0, 2.7, 8.0, 19.0}) {
        const double kernel =
            std::pow(2.0 * pi, 1.5) * std::pow(rho, -0.5) * bessel_j(0.5, rho);
        CHECK(kernel == Catch::Approx(4.0 * pi * std::sin(rho) / rho).epsilon(1e-12));
    }
}

TEST_CASE("round trip and Plancherel") {
    BandOptions tight;
    tight.tail_fraction = 1e-10;
    for (int n : {2, 3, 4, 5}) {
        for (const RadialProfile& w :
             {RadialProfile::gaussian(n, 1.0), RadialProfile::bump(n, 1.0, 0.5)}) {
            const SpectralProfile spec = hankel_transform(w, 8.0, tight);
            const RadialGrid out = make_grid(4.0, 160, GridStyle::uniform);
            const RadialProfile back = inverse_hankel(spec, out);
            // the gaussian is effectively band-limited, so the round trip is
            // tight; the mollifier's spectral tail rings at the 1e-4 level
            const double tol = w.kind() == RadialProfile::Kind::gaussian ? 1e-6 : 2e-4;
            for (std::size_t j = 0; j < out.size(); j += 13) {
                const double r = out.nodes()[j];
                CHECK(back(r) == Catch::Approx(w(r)).margin(tol));
            }
            // Plancherel under this convention
            const double phys = weighted_lp_norm(w, 2.0, 0.0);
            const double spect = std::pow(2.0 * pi, -0.5 * n) * spec.band_l2();
            CHECK(spect == Catch::Approx(phys).epsilon(1e-6));
        }
    }
    // jump profiles: the band carries all but the configured tail fraction
    BandOptions loose;
    loose.tail_fraction = 2e-3;
    loose.rho_cap = 700.0;
    const RadialProfile ball = RadialProfile::ball_indicator(3, 1.0);
    const SpectralProfile bs = hankel_transform(ball, 2.0, loose);
    const double phys = weighted_lp_norm(ball, 2.0, 0.0);
    const double spect = std::pow(2.0 * pi, -1.5) * bs.band_l2();
    CHECK(spect <= phys * (1.0 + 1e-9));
    CHECK(spect >= phys * (1.0 - 5e-3));
}

TEST_CASE("band limit guard") {
    const RadialProfile g = RadialProfile::gaussian(3, 1.0);
    const SpectralProfile spec = hankel_transform(g, 4.0);
    const RadialGrid far = make_grid(50.0, 64, GridStyle::uniform);
    CHECK_THROWS_AS(inverse_hankel(spec, far), BandLimitError);
}

TEST_CASE("fractional derivative") {
    const RadialProfile g = RadialProfile::gaussian(3, 1.0);
    const RadialGrid out = make_grid(6.0, 200, GridStyle::uniform);

    const RadialProfile id = fractional_derivative(g, 0.0, out);
    for (std::size_t j = 0; j < out.size(); j += 17) {
        const double r = out.nodes()[j];
        CHECK(id(r) == Catch::Approx(g(r)).margin(1e-6));
    }

    // the intermediate needs both its polynomial tail (wide span) and a dense
    // sampling (it feeds the next forward transform)
    std::vector<Panel> mid_panels = uniform_panels(0.0, 10.0, 140);
    append_panels(mid_panels, graded_panels(10.0, 40.0, false, 0.55, 16));
    const RadialGrid mid = RadialGrid::from_panels(mid_panels, 5, 40.0);
    const RadialProfile half = fractional_derivative(g, 0.5, mid);
    const RadialProfile back = fractional_derivative(half, -0.5, out);
    for (std::size_t j = 0; j < out.size(); j += 17) {
        const double r = out.nodes()[j];
        CHECK(back(r) == Catch::Approx(g(r)).margin(1e-4));
    }

    // || |D|^{1/2} gaussian ||_{L2(R^3)} = sqrt(2 pi), via the Gamma-integral:
    // (2pi)^{-3} |S^2| (2pi)^3 int rho^3 e^{-rho^2} drho = 4 pi * Gamma(2)/2
    const double closed = std::sqrt(2.0 * pi);
    const SpectralProfile spec = hankel_transform(g, 8.0);
    CHECK(spec.sobolev_norm(0.5) == Catch::Approx(closed).epsilon(1e-8));
    const RadialProfile half_on_out = fractional_derivative(g, 0.5, out);
    std::vector<double> mags(out.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        mags[i] = std::abs(half_on_out(out.nodes()[i]));
    CHECK(weighted_lp_norm_samples(mags, out, 3, 2.0, 0.0) ==
          Catch::Approx(closed).epsilon(1e-3));

    CHECK_THROWS_AS(fractional_derivative(g, -4.0, out), DomainError);
    // jump data fails the multiplier accuracy budget for positive s
    CHECK_THROWS_AS(fractional_derivative(RadialProfile::ball_indicator(3, 1.0), 0.5, out),
                    AccuracyError);
}

TEST_CASE("wave propagator at t = 0 and conservation") {
    const RadialProfile gsm = RadialProfile::gaussian(3, 1.0);
    const ComplexProfile g0 = wave_propagator(gsm, 0.0, WaveKind::half_wave);
    for (std::size_t j = 0; j < g0.grid.size(); j += 37)
        CHECK(std::abs(g0.values[j] - gsm(g0.grid.nodes()[j])) < 1e-6);
    const RadialProfile b = RadialProfile::bump(3, 0.8, 0.4);
    const ComplexProfile u0 = wave_propagator(b, 0.0, WaveKind::half_wave);
    for (std::size_t j = 0; j < u0.grid.size(); j += 37)
        CHECK(std::abs(u0.values[j] - b(u0.grid.nodes()[j])) < 5e-4);
    const ComplexProfile c0 = wave_propagator(b, 0.0, WaveKind::cosine);
    for (std::size_t j = 0; j < c0.grid.size(); j += 37)
        CHECK(std::abs(c0.values[j] - b(c0.grid.nodes()[j])) < 5e-4);
    // sine multiplier vanishes at t = 0
    const ComplexProfile s0 = wave_propagator(b, 0.0, WaveKind::sine_over_d);
    for (const auto& v : s0.values) CHECK(std::abs(v) < 1e-10);

    const double norm0 = weighted_lp_norm(b, 2.0, 0.0);
    for (double t : {1.0, 5.0, 20.0}) {
        const ComplexProfile u = wave_propagator(b, t, WaveKind::half_wave);
        CHECK(u.l2_norm() == Catch::Approx(norm0).epsilon(1e-3));
    }
    CHECK_THROWS_AS(wave_propagator(b, 100.0, WaveKind::half_wave, 64.0), InputError);
}

TEST_CASE("half-wave group law") {
    const RadialProfile g = RadialProfile::gaussian(3, 1.0);
    const double s = 0.7, t = 1.1;
    const double extent = s + t + 14.0;
    // dense grid: the intermediate is re-sampled as data for the second step
    RadialGrid grid = make_grid(extent, 3200, GridStyle::uniform);
    WavePlan plan(g, s + t, grid);
    const ComplexProfile us = plan.wave(s, WaveKind::half_wave);
    const ComplexProfile ust = plan.wave(s + t, WaveKind::half_wave);

    // apply W(t) to the real and imaginary parts of W(s) phi
    WavePlan plan_re(us.real_profile(), t, grid);
    std::vector<double> im(us.values.size());
    for (std::size_t i = 0; i < im.size(); ++i) im[i] = us.values[i].imag();
    RadialProfile im_prof = RadialProfile::sampled(
        3, {grid.nodes().begin(), grid.nodes().end()}, std::move(im));
    WavePlan plan_im(im_prof, t, grid);
    const ComplexProfile a = plan_re.wave(t, WaveKind::half_wave);
    const ComplexProfile bb = plan_im.wave(t, WaveKind::half_wave);

    double peak = 0.0;
    for (const auto& v : ust.values) peak = std::max(peak, std::abs(v));
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::complex<double> got = a.values[i] + std::complex<double>(0, 1) * bb.values[i];
        worst = std::max(worst, std::abs(got - ust.values[i]));
    }
    CHECK(worst < 1e-3 * peak);
}

TEST_CASE("schrodinger propagator against the closed-form gaussian") {
    for (int n : {2, 3}) {
        const RadialProfile g = RadialProfile::gaussian(n, 1.0);
        const RadialGrid out = make_grid(8.0, 200, GridStyle::uniform);
        for (double t : {0.35, 2.0}) {
            const ComplexProfile u = schrodinger_propagator(g, t, out);
            const ComplexProfile uf = schrodinger_fresnel(g, t, out);
            for (std::size_t j = 0; j < out.size(); j += 23) {
                const std::complex<double> ref =
                    gaussian_schrodinger_closed_form(n, 1.0, t, out.nodes()[j]);
                CHECK(std::abs(u.values[j] - ref) < 1e-4);
                CHECK(std::abs(uf.values[j] - ref) < 1e-4);
            }
        }
        // identity at t = 0
        const ComplexProfile u0 = schrodinger_propagator(g, 0.0, out);
        for (std::size_t j = 0; j < out.size(); j += 23)
            CHECK(std::abs(u0.values[j] - g(out.nodes()[j])) < 1e-12);
    }
    // L2 conservation across dispersive spreading
    const RadialProfile g3 = RadialProfile::gaussian(3, 1.0);
    const double norm0 = weighted_lp_norm(g3, 2.0, 0.0);
    for (double t : {0.1, 1.0, 10.0}) {
        const double extent = 4.0 * std::sqrt(1.0 + 4.0 * t * t) + 6.0;
        const RadialGrid out = make_grid(extent, 520, GridStyle::uniform);
        const ComplexProfile u = schrodinger_propagator(g3, t, out);
        CHECK(u.l2_norm() == Catch::Approx(norm0).epsilon(1e-3));
    }
}

TEST_CASE("explicit wave representation, n = 3") {
    const RadialProfile ind = RadialProfile::ball_indicator(3, 1.0);
    // psi = indicator of [0,1], t = 2, r = 2.5: (1/5) int_{0.5}^{1} lam dlam
    CHECK(wave_explicit_at(ind, 2.0, 2.5) == Catch::Approx(0.075).epsilon(1e-10));

    // initial condition: u/t -> g as t -> 0+
    const RadialProfile b = RadialProfile::bump(3, 0.5, 0.3);
    for (double r : {0.35, 0.5, 0.65})
        CHECK(wave_explicit_at(b, 1e-3, r) / 1e-3 == Catch::Approx(b(r)).epsilon(1e-3));

    // strong Huygens: zero outside |r - t| <= 1
    double peak = 0.0;
    for (double r : {1.5, 2.0, 2.5}) peak = std::max(peak, std::abs(wave_explicit_at(b, 2.0, r)));
    for (double r : {0.5, 0.9, 3.2, 4.0})
        CHECK(std::abs(wave_explicit_at(b, 2.0, r)) <= 1e-10 * peak);

    // agreement with the spectral sine propagator
    SpectralProfile probe = hankel_transform(b, 1.0);
    const double t = 2.0;
    RadialGrid grid = wave_field_grid(t + 2.0, probe.rho_max());
    WavePlan plan(b, t, grid);
    const ComplexProfile u = plan.wave(t, WaveKind::sine_over_d);
    double worst = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double r = grid.nodes()[j];
        if (r < t - 1.2 || r > t + 1.2) continue;
        const double ref = wave_explicit_at(b, t, r);
        scale = std::max(scale, std::abs(ref));
        worst = std::max(worst, std::abs(u.values[j].real() - ref));
    }
    CHECK(worst < 1e-3 * scale);
}

TEST_CASE("explicit wave representation, even n on r > t") {
    const RadialProfile b = RadialProfile::bump(2, 0.5, 0.3);
    const double t = 1.2;
    // compare with the spectral sine propagator on r > t + margin
    SpectralProfile probe = hankel_transform(b, 1.0);
    RadialGrid grid = wave_field_grid(t + 2.0, probe.rho_max());
    WavePlan plan(b, t, grid);
    const ComplexProfile u = plan.wave(t, WaveKind::sine_over_d);
    double worst = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double r = grid.nodes()[j];
        if (r < t + 0.05 || r > t + 1.1) continue;
        const double ref = wave_explicit_at(b, t, r);
        scale = std::max(scale, std::abs(ref));
        worst = std::max(worst, std::abs(u.values[j].real() - ref));
    }
    CHECK(scale > 0.0);
    CHECK(worst < 1e-3 * scale);

    CHECK_THROWS_AS(wave_explicit_at(b, 1.2, 1.0), RegionError);
    CHECK_NOTHROW(wave_explicit_at(RadialProfile::bump(4, 0.5, 0.3), 0.4, 1.1));
}

TEST_CASE("finite propagation speed of the sine propagator") {
    const RadialProfile b = RadialProfile::bump(3, 0.5, 0.3);
    const ComplexProfile u = wave_propagator(b, 2.0, WaveKind::sine_over_d);
    double peak = 0.0;
    for (const auto& v : u.values) peak = std::max(peak, std::abs(v));
    for (std::size_t j = 0; j < u.grid.size(); ++j)
        if (u.grid.nodes()[j] > 2.0 + 0.8 + 0.7)
            CHECK(std::abs(u.values[j]) <= 1e-3 * peak);
}

TEST_CASE("pointwise lower bound of the explicit solution") {
    // psi = indicator of [0,1], t = 1, r = 1.9, delta = 1: u = 2 * bound
    const RadialProfile ind = RadialProfile::ball_indicator(3, 1.0);
    const LowerBoundSides sides = lemma41_lower_bound_check(ind, 1.0, 1.9, 1.0);
    const double integral = 0.5 * (1.0 - 0.81);
    CHECK(sides.u == Catch::Approx(integral / 3.8).epsilon(1e-10));
    CHECK(sides.bound == Catch::Approx(integral / 7.6).epsilon(1e-10));
    CHECK(sides.passes());

    // zero data: both sides vanish, the check still passes
    const LowerBoundSides zero = lemma41_lower_bound_check(RadialProfile::zero(3), 1.0, 1.9, 1.0);
    CHECK(zero.u == 0.0);
    CHECK(zero.bound == 0.0);
    CHECK(zero.passes());

    // even dimension: sampled points of the band, delta from the threshold
    const RadialProfile b4 = RadialProfile::bump(4, 0.75, 0.25);
    const double d4 = delta_threshold(2);
    for (double rt : {0.55, 0.7, 0.85, 0.99})
        for (double t : {0.2, 0.6, 1.5}) {
            const LowerBoundSides s4 = lemma41_lower_bound_check(b4, t, t + rt, d4);
            CHECK(s4.passes());
        }

    CHECK_THROWS_AS(lemma41_lower_bound_check(ind, 1.0, 3.0, 1.0), RegionError);
    CHECK_THROWS_AS(lemma41_lower_bound_check(ind, -0.5, 0.4, 1.0), RegionError);
    CHECK_THROWS_AS(lemma41_lower_bound_check(RadialProfile::bump(7, 0.75, 0.2), 0.2, 1.05,
                                              1.0),
                    DomainError);  // delta above threshold for m = 3
}
