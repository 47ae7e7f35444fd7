#include <catch2/catch_amalgamated.hpp>

#include "radstri/quadrature.hpp"

using namespace radstri;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    for (int m : {2, 4, 8, 16}) {
        // degree 2m-1 polynomial
        auto f = [m](double x) { return std::pow(x, 2 * m - 1) + 3.0 * x * x + 1.0; };
        const double got = integrate_panel(f, -1.0, 1.0, m);
        CHECK(got == Catch::Approx(2.0 + 2.0).epsilon(1e-13));  // odd term drops
    }
    const double v = integrate([](double x) { return std::exp(x); },
                               uniform_panels(0.0, 1.0, 8), 8);
    CHECK(v == Catch::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("graded panels tile the interval") {
    auto panels = graded_panels(0.0, 1.0, false, 0.25, 12);
    CHECK(panels.front().a == 0.0);
    CHECK(panels.back().b == 1.0);
    for (std::size_t i = 0; i + 1 < panels.size(); ++i)
        CHECK(panels[i].b == Catch::Approx(panels[i + 1].a).margin(1e-15));
    const double len = integrate([](double) { return 1.0; }, panels, 4);
    CHECK(len == Catch::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("endpoint-singular integrals") {
    // int_0^1 x^{-1/2} dx = 2
    const double a = singular_endpoint_integral([](double) { return 1.0; }, 0.0, 1.0, -0.5);
    CHECK(a == Catch::Approx(2.0).epsilon(1e-12));
    // int_0^1 e^x x^{-1/2} dx = sum_k 1/(k! (k+1/2))
    double ref_b = 0.0, fact = 1.0;
    for (int k = 0; k < 30; ++k) {
        ref_b += 1.0 / (fact * (k + 0.5));
        fact *= k + 1.0;
    }
    const double b = singular_endpoint_integral([](double x) { return std::exp(x); }, 0.0, 1.0, -0.5);
    CHECK(b == Catch::Approx(ref_b).epsilon(3e-9));
    // int_0^1 cos(x) x^{-0.9} dx = sum_k (-1)^k / ((2k)! (2k+0.1))
    double ref_c = 0.0;
    fact = 1.0;
    for (int k = 0; k < 15; ++k) {
        ref_c += (k % 2 == 0 ? 1.0 : -1.0) / (fact * (2 * k + 0.1));
        fact *= (2 * k + 1.0) * (2 * k + 2.0);
    }
    const double c = singular_endpoint_integral([](double x) { return std::cos(x); }, 0.0, 1.0, -0.9);
    CHECK(c == Catch::Approx(ref_c).epsilon(3e-9));
}

TEST_CASE("interior-singular integrals") {
    const double v = singular_power_integral([](double) { return 1.0; }, 0.0, 2.0, 1.0, -0.5);
    CHECK(v == Catch::Approx(4.0).epsilon(1e-8));
    // singular point outside the interval
    const double w = singular_power_integral([](double) { return 1.0; }, 1.0, 2.0, 0.5, -0.5);
    CHECK(w == Catch::Approx(2.0 * (std::sqrt(1.5) - std::sqrt(0.5))).epsilon(1e-10));
}

TEST_CASE("chebyshev substitution reproduces the beta identity") {
    for (auto [a, b] : {std::pair{1.0, 2.0}, {0.1, 10.0}, {1.0, 1.0 + 1e-6}}) {
        const double v = chebyshev_singular_integral([](double rho) { return 2.0 * rho; }, a, b);
        CHECK(v == Catch::Approx(pi).epsilon(1e-12));
    }
    CHECK_THROWS_AS(chebyshev_singular_integral([](double) { return 1.0; }, 2.0, 1.0),
                    DomainError);
}

TEST_CASE("line fit recovers exact lines") {
    std::vector<double> x{1.0, 2.0, 3.0, 4.0}, y;
    for (double xi : x) y.push_back(2.5 * xi - 1.0);
    const LineFit fit = fit_line(x, y);
    CHECK(fit.slope == Catch::Approx(2.5).epsilon(1e-13));
    CHECK(fit.intercept == Catch::Approx(-1.0).margin(1e-12));
    CHECK(fit.r2 == Catch::Approx(1.0).epsilon(1e-13));
}
