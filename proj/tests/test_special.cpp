#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>

#include "radstri/bessel.hpp"
#include "radstri/polynomials.hpp"

using namespace radstri;

namespace {

// Rodrigues evaluation of P_k: expand (z^2-1)^k, differentiate k times, then
// evaluate the polynomial; exact in rational arithmetic, done in long double.
double legendre_rodrigues(int k, double z) {
    std::vector<long double> coef(2 * k + 1, 0.0L);  // coefficients of (z^2-1)^k
    long double binom = 1.0L;
    for (int j = 0; j <= k; ++j) {
        coef[2 * j] = binom * ((k - j) % 2 == 0 ? 1.0L : -1.0L);
        binom = binom * (k - j) / (j + 1.0L);
    }
    // k-th derivative
    std::vector<long double> d(coef.begin(), coef.end());
    for (int pass = 0; pass < k; ++pass) {
        for (std::size_t i = 0; i + 1 < d.size(); ++i) d[i] = d[i + 1] * (i + 1.0L);
        d.pop_back();
    }
    long double val = 0.0L, zp = 1.0L;
    for (long double c : d) {
        val += c * zp;
        zp *= z;
    }
    long double fact = 1.0L;
    for (int j = 2; j <= k; ++j) fact *= j;
    return static_cast<double>(val / (std::pow(2.0L, k) * fact));
}

// Rodrigues-type evaluation of T_k via high-order central differences of
// (1-z^2)^{k-1/2} in long double; reliable for k <= 3 away from the endpoints.
double tschebyscheff_rodrigues(int k, double z) {
    auto f = [k](long double x) { return std::pow(1.0L - x * x, k - 0.5L); };
    const long double h = 1e-2L;
    auto d1 = [&](auto g, long double x) {  // 6th-order first derivative
        return (45.0L * (g(x + h) - g(x - h)) - 9.0L * (g(x + 2 * h) - g(x - 2 * h)) +
                (g(x + 3 * h) - g(x - 3 * h))) /
               (60.0L * h);
    };
    std::function<long double(long double)> g = f;
    for (int pass = 0; pass < k; ++pass) {
        auto prev = g;
        g = [d1, prev](long double x) { return d1(prev, x); };
    }
    long double dblf = 1.0L;  // (2k-1)!!
    for (int j = 2 * k - 1; j >= 1; j -= 2) dblf *= j;
    const long double sign = (k % 2 == 0) ? 1.0L : -1.0L;
    return static_cast<double>(sign / dblf * std::sqrt(1.0L - (long double)z * z) * g(z));
}

}  // namespace

TEST_CASE("bessel values against reference") {
    // reference values from a high-precision independent evaluation
    struct Row { double nu, x, val; };
    const Row rows[] = {
        {0.0, 0.1, 9.9750156206604002e-01}, {0.0, 1.0, 7.6519768655796661e-01},
        {0.0, 5.0, -1.7759677131433829e-01}, {0.0, 11.0, -1.7119030040719610e-01},
        {0.0, 13.0, 2.0692610237706782e-01}, {0.0, 20.0, 1.6702466434058316e-01},
        {0.0, 50.0, 5.5812327669251816e-02},
        {1.0, 0.5, 2.4226845767487390e-01}, {1.0, 1.0, 4.4005058574493350e-01},
        {1.0, 5.0, -3.2757913759146523e-01}, {1.0, 13.0, -7.0318052121778371e-02},
        {1.0, 50.0, -9.7511828125175143e-02},
        {2.0, 0.1, 1.2489586587999190e-03}, {2.0, 5.0, 4.6565116277752214e-02},
        {2.0, 13.0, -2.1774426424195678e-01}, {2.0, 50.0, -5.9712800794258822e-02},
        {0.5, 0.1, 2.5189294032600096e-01}, {0.5, 1.0, 6.7139670714180311e-01},
        {0.5, 20.0, 1.6288076385502986e-01},
        {1.5, 0.1, 8.4020343015001435e-03}, {1.5, 1.0, 2.4029783912342700e-01},
        {1.5, 13.0, -1.9365962717696994e-01},
        {2.5, 0.1, 1.6808871900334129e-04}, {2.5, 1.0, 4.9496810228477940e-02},
        {2.5, 5.0, 2.4037720111131736e-01},
    };
    for (const Row& r : rows)
        CHECK(bessel_j(r.nu, r.x) == Catch::Approx(r.val).margin(1e-12));

    // first zeros
    CHECK(std::abs(bessel_j(0.0, 2.404825557695773)) < 1e-12);
    CHECK(std::abs(bessel_j(1.0, 3.831705970207512)) < 1e-12);
}

TEST_CASE("bessel series/asymptotic seam") {
    // the switch point sits at x = 12; both branches agree there
    for (double nu : {0.0, 1.0, 2.0}) {
        const double lo = detail::bessel_j_series(nu, 12.0);
        const double hi = detail::bessel_j_asymptotic(nu, 12.0);
        CHECK(lo == Catch::Approx(hi).margin(1e-10));
    }
    CHECK(bessel_j(0.0, 12.0) == Catch::Approx(4.7689310796833535e-02).margin(1e-12));
    CHECK(bessel_j(1.0, 12.0) == Catch::Approx(-2.2344710449062760e-01).margin(1e-12));
    CHECK(bessel_j(2.0, 12.0) == Catch::Approx(-8.4930494878604809e-02).margin(1e-12));
    CHECK_THROWS_AS(bessel_j(0.0, -1.0), DomainError);
    CHECK_THROWS_AS(bessel_j(3.25, 1.0), DomainError);
}

TEST_CASE("orthogonal polynomial basics") {
    for (int k = 0; k <= 20; ++k) {
        CHECK(legendre(k, 1.0) == Catch::Approx(1.0).margin(1e-13));
        CHECK(tschebyscheff(k, 1.0) == Catch::Approx(1.0).margin(1e-13));
        for (int i = 0; i <= 400; ++i) {
            const double z = -1.0 + 2.0 * i / 400.0;
            CHECK(std::abs(legendre(k, z)) <= 1.0 + 1e-12);
            CHECK(std::abs(tschebyscheff(k, z)) <= 1.0 + 1e-12);
        }
    }
    CHECK(legendre(1, 0.3) == Catch::Approx(0.3).margin(1e-15));
    CHECK_THROWS_AS(legendre(2, 1.5), DomainError);
    CHECK_THROWS_AS(legendre(61, 0.0), DomainError);
}

TEST_CASE("T_k(cos) is cos(k .)") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> unif(0.0, pi);
    for (int trial = 0; trial < 100; ++trial) {
        const double th = unif(rng);
        CHECK(tschebyscheff(3, std::cos(th)) ==
              Catch::Approx(std::cos(3.0 * th)).margin(1e-12));
        CHECK(tschebyscheff(7, std::cos(th)) ==
              Catch::Approx(std::cos(7.0 * th)).margin(1e-12));
    }
}

TEST_CASE("recurrences match the Rodrigues forms") {
    for (int k = 0; k <= 6; ++k)
        for (int i = 0; i < 20; ++i) {
            const double z = -0.95 + 1.9 * i / 19.0;
            CHECK(legendre(k, z) == Catch::Approx(legendre_rodrigues(k, z)).margin(1e-8));
        }
    // Tschebyscheff Rodrigues display: sign and normalization agree with the
    // standard T_k (no discrepancy observed)
    for (int k = 1; k <= 3; ++k)
        for (double z : {-0.6, -0.2, 0.1, 0.5, 0.7})
            CHECK(tschebyscheff(k, z) ==
                  Catch::Approx(tschebyscheff_rodrigues(k, z)).margin(2e-6));
}

TEST_CASE("delta threshold") {
    CHECK(delta_threshold(1) == 1.0);
    CHECK(delta_threshold(2) == 1.0);
    const double d3 = delta_threshold(3);
    CHECK(d3 == Catch::Approx(2.0 / std::sqrt(3.0) - 1.0).margin(1e-6));
    CHECK(d3 > 0.0);
    CHECK(d3 < 1.0);
    // brute-force confirmation on a fine grid
    const double z0 = 1.0 / (1.0 + d3);
    for (int i = 0; i <= 10000; ++i) {
        const double z = z0 + (1.0 - z0) * i / 10000.0;
        CHECK(legendre(2, z) >= 0.5 - 1e-9);
        CHECK(tschebyscheff(2, z) >= 0.5 - 1e-9);
    }
    CHECK_THROWS_AS(delta_threshold(0), DomainError);
}
