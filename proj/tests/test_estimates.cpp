#include <catch2/catch_amalgamated.hpp>

#include "radstri/estimates.hpp"
#include "radstri/scan_family.hpp"

using namespace radstri;

TEST_CASE("region membership follows the defining displays") {
    // A_3 contains its isolated point
    CHECK(region_membership({RegionName::A_n, 3}, 0.0, 0.5));
    CHECK_FALSE(region_membership({RegionName::D_n, 3}, 0.0, 0.5));

    // radial region: 0.4 < 2 * (1/2 - 0.25) = 0.5
    CHECK(region_membership({RegionName::radial_global, 3}, 0.4, 0.25));
    CHECK_FALSE(region_membership({RegionName::radial_global, 3}, 0.5, 0.25));

    // Omega_2 excludes its own boundary x = (n-1)(1/2-y)
    CHECK_FALSE(region_membership({RegionName::Omega_n, 2}, 0.25, 0.25));
    CHECK(region_membership({RegionName::Omega_n, 2}, 0.26, 0.25));

    // non-radial region: excluded corner points per display
    CHECK_FALSE(region_membership({RegionName::non_radial, 2}, 0.25, 0.0));
    CHECK_FALSE(region_membership({RegionName::non_radial, 3}, 0.5, 0.0));
    CHECK(region_membership({RegionName::non_radial, 3}, 0.4, 0.0));
    CHECK_FALSE(region_membership({RegionName::non_radial, 3}, 0.0, 0.0));

    // Lambda_n and the Sogge region keep the isolated point (0, 1/2)
    CHECK(region_membership({RegionName::Lambda_n, 2}, 0.0, 0.5));
    CHECK(region_membership({RegionName::sogge_n3, 3}, 0.0, 0.5));
    CHECK(region_membership({RegionName::sogge_n3, 3}, 0.45, 0.45));
    CHECK_FALSE(region_membership({RegionName::sogge_n3, 3}, 0.3, 0.25));

    // outside the unit square of exponent reciprocals
    CHECK_FALSE(region_membership({RegionName::A_n, 3}, 0.7, 0.3));
    CHECK_FALSE(region_membership({RegionName::radial_global, 3}, -0.1, 0.3));

    // A_n sits inside the radial region (up to the isolated point)
    for (int n : {3, 4, 5})
        for (int i = 0; i <= 200; ++i)
            for (int j = 0; j <= 200; ++j) {
                const double x = 0.5 * i / 200.0, y = 0.5 * j / 200.0;
                if (region_membership({RegionName::A_n, n}, x, y))
                    CHECK((region_membership({RegionName::radial_global, n}, x, y) ||
                           (x == 0.0 && y == 0.5)));
            }
}

TEST_CASE("estimate specs reject gap and region violations by display name") {
    EstimateSpec bad;
    bad.id = EstimateId::strichartz_3_4;
    bad.n = 3;
    bad.q = 2.0;
    bad.p = 2.2;  // (1/q, 1/p) = (0.5, 0.4545) lies above A_3
    CHECK_THROWS_WITH(bad.validate(), Catch::Matchers::ContainsSubstring("(3.2)"));

    EstimateSpec sm;
    sm.id = EstimateId::local_smoothing_5_7;
    sm.alpha = 0.6;
    CHECK_THROWS_AS(sm.validate(), EstimateSpecError);

    EstimateSpec ep;
    ep.id = EstimateId::schrodinger_endpoint_6_3;
    ep.n = 3;
    ep.alpha = 1.0 / 6.0;  // boundary of the open interval
    CHECK_THROWS_AS(ep.validate(), EstimateSpecError);

    EstimateSpec mo;
    mo.id = EstimateId::morawetz_3_7;
    mo.n = 3;
    mo.alpha = 0.5;
    CHECK_THROWS_AS(mo.validate(), EstimateSpecError);
}

TEST_CASE("morawetz ratio") {
    const RadialProfile g = RadialProfile::gaussian(3, 1.0);
    const RatioReport rep = morawetz_ratio(g, 1.0);
    CHECK(std::isfinite(rep.supremum));
    CHECK(rep.supremum > 0.0);
    CHECK(rep.tail_bounds.count("lhs_sq_tail") == 1);
    CHECK_THROWS_AS(morawetz_ratio(g, 0.5), DomainError);
    CHECK_THROWS_AS(morawetz_ratio(g, 1.5), DomainError);
}

TEST_CASE("trace ratio") {
    const RadialProfile g = RadialProfile::gaussian(3, 1.0);
    const RatioReport rep = trace_ratio(g, 1.0);
    CHECK(std::isfinite(rep.supremum));
    CHECK(rep.supremum > 0.0);
    CHECK_THROWS_AS(trace_ratio(g, 0.5), DomainError);
    CHECK_THROWS_AS(trace_ratio(RadialProfile::zero(3), 1.0), DegenerateInputError);

    // dilation invariance of the balanced form
    const double base = trace_ratio(g, 1.0).supremum;
    for (double lam : {0.25, 4.0})
        CHECK(trace_ratio(g.dilated(lam), 1.0).supremum == Catch::Approx(base).epsilon(1e-3));
}

TEST_CASE("radial sobolev ratio") {
    // n = 3, p = 4: the window bound (n-1)(1/2-1/p) > 1/2 fails (equality)
    const RadialProfile b = RadialProfile::bump(3, 0.5, 0.3);
    CHECK_THROWS_WITH(radial_sobolev_ratio(b, 4.0),
                      Catch::Matchers::ContainsSubstring("lower window"));
    // p = 6 sits inside the window
    const RatioReport rep = radial_sobolev_ratio(b, 6.0);
    CHECK(std::isfinite(rep.supremum));
    CHECK(rep.supremum > 0.0);
    CHECK_THROWS_AS(radial_sobolev_ratio(RadialProfile::zero(3), 6.0), DegenerateInputError);
}

TEST_CASE("energy identity pairs") {
    // (3.4) at (1/q,1/p) = (0,1/2): ratio is exactly the conservation identity
    EstimateSpec e;
    e.id = EstimateId::strichartz_3_4;
    e.n = 3;
    e.q = inf;
    e.p = 2.0;
    const auto reps = strichartz_scan(e, {RadialProfile::gaussian(3, 1.0)});
    REQUIRE(reps.size() == 1);
    CHECK(reps[0].supremum == Catch::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("local smoothing at alpha = 0 is the exact energy identity") {
    EstimateSpec e;
    e.id = EstimateId::local_smoothing_5_7;
    e.n = 3;
    e.alpha = 0.0;
    e.T_list = {1.0, 4.0};
    ScanOptions opt;
    opt.band.tail_fraction = 1e-10;
    opt.band.force_spectral = true;
    const auto reps = strichartz_scan(e, {RadialProfile::gaussian(3, 1.0)}, opt);
    REQUIRE(reps.size() == 1);
    for (const RatioSample& s : reps[0].samples)
        CHECK(s.ratio == Catch::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("global radial strichartz scan (3.1)/(3.4)") {
    EstimateSpec e;
    e.id = EstimateId::strichartz_3_4;
    e.n = 3;
    e.q = 2.0;
    e.p = 6.0;
    CHECK(e.derived_s() == Catch::Approx(0.5));
    const auto reps = strichartz_scan(e, {RadialProfile::bump(3, 0.5, 0.3)});
    REQUIRE(reps.size() == 1);
    CHECK(std::isfinite(reps[0].supremum));
    CHECK(reps[0].supremum > 0.0);
}

TEST_CASE("local strichartz scan (5.3)") {
    EstimateSpec e;
    e.id = EstimateId::local_strichartz_5_3;
    e.n = 3;
    e.q = 1.0 / 0.45;
    e.p = 1.0 / 0.3;
    e.T_list = {1.0, 4.0};
    e.validate();
    const auto reps = strichartz_scan(e, {RadialProfile::bump(3, 0.5, 0.3)});
    REQUIRE(reps.size() == 1);
    REQUIRE(reps[0].samples.size() == 2);
    // the T^theta-normalized ratio is approximately T-independent
    CHECK(reps[0].samples[0].ratio ==
          Catch::Approx(reps[0].samples[1].ratio).epsilon(0.25));
}

TEST_CASE("local energy (5.8) and smoothing scans") {
    EstimateSpec e;
    e.id = EstimateId::local_energy_5_8;
    e.n = 3;
    const auto reps = strichartz_scan(e, {RadialProfile::bump(3, 0.5, 0.3)});
    CHECK(std::isfinite(reps[0].supremum));
    CHECK(reps[0].tail_bounds.at("lhs_sq_tail") == 0.0);  // strong Huygens

    EstimateSpec k;
    k.id = EstimateId::schrodinger_smoothing_6_4;
    k.n = 3;
    k.gamma = 1.0;
    const auto kreps = strichartz_scan(k, {RadialProfile::gaussian(3, 1.0)});
    CHECK(std::isfinite(kreps[0].supremum));
    CHECK(kreps[0].supremum > 0.0);
}

TEST_CASE("schrodinger endpoint ratio (6.3)") {
    const RadialProfile g = RadialProfile::gaussian(3, 1.0);
    const RatioReport rep = schrodinger_endpoint_ratio(g, 0.0);
    CHECK(std::isfinite(rep.supremum));
    CHECK(rep.supremum > 0.0);
    CHECK_THROWS_AS(schrodinger_endpoint_ratio(g, 1.0 / 6.0), DomainError);
    CHECK_THROWS_AS(schrodinger_endpoint_ratio(RadialProfile::gaussian(2, 1.0), 0.0),
                    DomainError);
}
