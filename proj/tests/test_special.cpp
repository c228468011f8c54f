#include <doctest.h>

#include <cmath>

#include "gep/special.hpp"

using namespace gep;

TEST_SUITE("special") {

TEST_CASE("log1mexp") {
    CHECK(log1mexp(-1e-12) == doctest::Approx(std::log(1e-12)).epsilon(1e-9));
    CHECK(log1mexp(-50.0) == doctest::Approx(-std::exp(-50.0)).epsilon(1e-12));
    CHECK(std::exp(log1mexp(-0.5)) == doctest::Approx(1.0 - std::exp(-0.5)).epsilon(1e-15));
    CHECK(log1mexp(0.0) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("expansion coefficients: integer gamma truncates exactly") {
    CHECK(expansion_coefficient(1.0, 0) == 1.0);
    CHECK(expansion_coefficient(1.0, 1) == 0.0);
    CHECK(expansion_coefficient(1.0, 7) == 0.0);
    // (1-z)^2 = 1 - 2z + z^2
    CHECK(expansion_coefficient(3.0, 0) == doctest::Approx(1.0));
    CHECK(expansion_coefficient(3.0, 1) == doctest::Approx(-2.0));
    CHECK(expansion_coefficient(3.0, 2) == doctest::Approx(1.0));
    CHECK(expansion_coefficient(3.0, 3) == 0.0);
}

TEST_CASE("expansion coefficients match the product form") {
    // Independent route: (-1)^j / j! * prod_{m=0}^{j-1} (gamma - 1 - m).
    const auto product_form = [](double gamma_val, int j) {
        double prod = 1.0;
        for (int m = 0; m < j; ++m) prod *= gamma_val - 1.0 - m;
        double fact = 1.0;
        for (int m = 2; m <= j; ++m) fact *= m;
        return ((j % 2 == 0) ? 1.0 : -1.0) * prod / fact;
    };
    for (double g : {0.3, 0.9, 2.5, 3.7, 7.2}) {
        for (int j = 0; j <= 12; ++j) {
            CHECK(expansion_coefficient(g, j) ==
                  doctest::Approx(product_form(g, j)).epsilon(1e-13));
        }
    }
    CHECK(expansion_coefficient(2.5, 3) == doctest::Approx(product_form(2.5, 3)).epsilon(1e-13));
}

TEST_CASE("binomial") {
    CHECK(binomial(5, 2) == 10.0);
    CHECK(binomial(20, 10) == 184756.0);
    CHECK(binomial(40, 20) == doctest::Approx(137846528820.0).epsilon(1e-12));
    CHECK(binomial(4, 5) == 0.0);
}

TEST_CASE("chi2 survival function") {
    CHECK(chi2_sf(0.0, 1) == 1.0);
    CHECK(chi2_sf(3.8415, 1) == doctest::Approx(0.0500).epsilon(2e-3));
    CHECK(chi2_sf(12.1412, 1) == doctest::Approx(4.9e-4).epsilon(0.02));
    // chi2(2) has survival e^{-w/2}
    CHECK(chi2_sf(5.0, 2) == doctest::Approx(std::exp(-2.5)).epsilon(1e-12));
}

TEST_CASE("incomplete gamma complements") {
    for (double a : {0.5, 1.0, 3.5, 10.0}) {
        for (double x : {0.1, 1.0, 5.0, 20.0}) {
            CHECK(gamma_p(a, x) + gamma_q(a, x) == doctest::Approx(1.0).epsilon(1e-13));
        }
    }
    CHECK(gamma_p(1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("inverse normal quantile") {
    CHECK(inverse_normal_cdf(0.975) == doctest::Approx(1.959964).epsilon(1e-6));
    CHECK(inverse_normal_cdf(0.5) == doctest::Approx(0.0));
    CHECK(inverse_normal_cdf(0.025) == doctest::Approx(-1.959964).epsilon(1e-6));
    // Round trip through erfc-based normal cdf.
    for (double p : {1e-8, 0.01, 0.3, 0.77, 0.999}) {
        const double z = inverse_normal_cdf(p);
        const double back = 0.5 * std::erfc(-z / std::sqrt(2.0));
        CHECK(back == doctest::Approx(p).epsilon(1e-10));
    }
}

TEST_CASE("uniform stream is deterministic and in range") {
    UniformStream a(42), b(42);
    for (int i = 0; i < 1000; ++i) {
        const double u = a.next();
        CHECK(u == b.next());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

}  // TEST_SUITE
