#include <catch2/catch_amalgamated.hpp>

#include "radstri/maximal.hpp"
#include "radstri/scan_family.hpp"

using namespace radstri;

namespace {

LineProfile indicator_profile(double lo = -1.0, double hi = 1.0, std::size_t count = 4097) {
    return LineProfile::from_function(
        [lo, hi](double t) { return (t >= lo && t <= hi) ? 1.0 : 0.0; }, lo - 1.0, hi + 1.0,
        count);
}

// brute-force sigma maximization, the independent oracle for M at a point
double brute_maximal(const LineProfile& f, double t) {
    double best = 0.0;
    const double reach =
        std::max(std::abs(t - f.nodes().front()), std::abs(f.nodes().back() - t));
    for (int k = 0; k <= 40000; ++k) {
        const double sigma = reach * (k + 1.0) / 40001.0;
        best = std::max(best, f.abs_window_integral(t - sigma, t + sigma) / (2.0 * sigma));
    }
    return best;
}

}  // namespace

TEST_CASE("hardy-littlewood maximal function") {
    const LineProfile ind = indicator_profile();
    CHECK(hl_maximal(ind, 0.0) == Catch::Approx(1.0).epsilon(2e-3));
    // at t = 3 the brute-force optimum is sigma = 4 with value 1/4
    const double at3 = hl_maximal(ind, 3.0);
    CHECK(at3 == Catch::Approx(0.25).margin(0.025));
    CHECK(at3 <= 0.25 * (1.0 + 2e-3));
    CHECK(at3 == Catch::Approx(brute_maximal(ind, 3.0)).margin(0.02));

    const LineProfile zero = ind.scaled(0.0);
    CHECK(hl_maximal(zero, 0.5) == 0.0);

    CHECK_THROWS_AS(LineProfile({}, {}), InputError);
}

TEST_CASE("maximal function dominates cell averages, is homogeneous and monotone") {
    const LineProfile f = LineProfile::from_function(
        [](double t) { return std::exp(-t * t) * (1.0 + 0.5 * std::sin(3.0 * t)); }, -4.0, 4.0,
        1025);
    const double cell = f.min_cell();
    for (double t : {-2.0, -0.3, 0.0, 0.7, 1.9}) {
        const double avg = f.abs_window_integral(t - cell, t + cell) / (2.0 * cell);
        CHECK(hl_maximal(f, t) >= avg - 1e-12);
        CHECK(hl_maximal(f.scaled(2.0), t) == Catch::Approx(2.0 * hl_maximal(f, t)).epsilon(1e-13));
    }
    // |f| <= |g| pointwise implies Mf <= Mg
    std::vector<double> nodes(f.nodes().begin(), f.nodes().end());
    std::vector<double> bigger(f.values().begin(), f.values().end());
    for (double& v : bigger) v = std::abs(v) + 0.1;
    const LineProfile g(nodes, bigger);
    for (double t : {-1.0, 0.2, 2.5}) CHECK(hl_maximal(f, t) <= hl_maximal(g, t) + 1e-12);
}

TEST_CASE("singular maximal function") {
    const LineProfile ind = indicator_profile();
    CHECK(singular_maximal(ind.scaled(0.0), 0.3) == 0.0);
    // the sigma <= 1 windows all give exactly 2 at t = 0
    const double at0 = singular_maximal(ind, 0.0);
    CHECK(at0 == Catch::Approx(2.0).margin(0.03));
    CHECK(at0 >= 2.0 - 0.03);

    // dilation invariance of the defining supremum
    const LineProfile ind4 = ind.dilated(4.0);
    for (double t : {0.0, 0.5, 3.0})
        CHECK(singular_maximal(ind4, 4.0 * t) ==
              Catch::Approx(singular_maximal(ind, t)).epsilon(1e-10));
}

TEST_CASE("pointwise domination of M_1/2 by M") {
    const LineProfile ind = indicator_profile();
    std::vector<double> eval;
    for (int i = 0; i <= 60; ++i) eval.push_back(-3.0 + 6.0 * i / 60.0);
    const RatioReport rep = pointwise_domination_check(ind, eval);
    CHECK(std::isfinite(rep.supremum));
    CHECK(rep.supremum > 0.0);
    for (const RatioSample& s : rep.samples) CHECK(s.ratio >= 0.0);

    const RatioReport rep2 = pointwise_domination_check(ind.scaled(2.0), eval);
    for (std::size_t i = 0; i < rep.samples.size(); ++i)
        CHECK(rep2.samples[i].ratio == Catch::Approx(rep.samples[i].ratio).epsilon(1e-12));

    CHECK_THROWS_AS(pointwise_domination_check(ind.scaled(0.0), eval), DegenerateInputError);
}

TEST_CASE("muckenhoupt weighted bound") {
    const LineProfile f = LineProfile::from_function(
        [](double t) { return (t >= 1.0 && t <= 2.0) ? 1.0 : 0.0; }, 0.5, 2.5, 1025);

    const RatioReport rep = muckenhoupt_ratio(f, 2.0, 0.0);
    CHECK(rep.admissible);
    CHECK(rep.supremum >= 0.999);  // Mf >= |f| a.e.
    CHECK(std::isfinite(rep.supremum));

    // boundary and out-of-region tuples are flagged, not dropped
    CHECK_FALSE(muckenhoupt_ratio(f, 2.0, 1.0).admissible);
    CHECK(muckenhoupt_ratio(f, 2.0, 1.0).rejection == "a < p - 1");
    CHECK_FALSE(muckenhoupt_ratio(f, 2.0, -1.0).admissible);
    CHECK(muckenhoupt_ratio(f, 4.0, 2.5).admissible);
    CHECK_FALSE(muckenhoupt_ratio(f, 4.0, 3.5).admissible);

    // unweighted case is translation invariant
    const double base = muckenhoupt_ratio(f, 2.0, 0.0).supremum;
    const double moved = muckenhoupt_ratio(f.translated(40.0), 2.0, 0.0).supremum;
    CHECK(moved == Catch::Approx(base).epsilon(1e-3));

    CHECK_THROWS_AS(muckenhoupt_ratio(f, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(muckenhoupt_ratio(f.scaled(0.0), 2.0, 0.0), DegenerateInputError);
}

TEST_CASE("even extension reflects a half-line profile") {
    std::vector<double> pos{0.5, 1.0, 1.5}, vals{3.0, 2.0, 1.0};
    const LineProfile g = LineProfile::even_from_halfline(pos, vals);
    CHECK(g.even_extension());
    CHECK(g(1.0) == Catch::Approx(2.0));
    CHECK(g(-1.0) == Catch::Approx(2.0));
    CHECK(g(-1.5) == Catch::Approx(1.0));
    CHECK_THROWS_AS(LineProfile::even_from_halfline({-0.5, 1.0}, {1.0, 1.0}), InputError);
}
