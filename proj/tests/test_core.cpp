#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gep/core.hpp"
#include "gep/quadrature.hpp"
#include "gep/series.hpp"

using namespace gep;

namespace {

const std::vector<double> kLambdaGrid = {0.5, 1.0, 2.0, 5.0};
const std::vector<double> kBetaGrid = {0.5, 1.0, 3.0};
const std::vector<double> kAlphaGrid = {0.5, 1.0, 2.5, 7.0};

template <class F>
void for_grid(F&& f) {
    for (double l : kLambdaGrid)
        for (double b : kBetaGrid)
            for (double a : kAlphaGrid) f(GepParams(l, b, a));
}

// EP formulas coded directly, for the alpha = 1 reduction check.
double ep_pdf(double l, double b, double x) {
    return l * b * std::exp(-l - b * x + l * std::exp(-b * x)) / (1.0 - std::exp(-l));
}
double ep_cdf(double l, double b, double x) {
    return (1.0 - std::exp(-l + l * std::exp(-b * x))) / (1.0 - std::exp(-l));
}

double ks_statistic(std::vector<double> draws, const GepParams& p) {
    std::sort(draws.begin(), draws.end());
    const double n = static_cast<double>(draws.size());
    double d = 0.0;
    for (std::size_t i = 0; i < draws.size(); ++i) {
        const double f = cdf(p, draws[i]);
        d = std::max(d, std::max((i + 1) / n - f, f - i / n));
    }
    return d;
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("parameter and argument validation") {
    CHECK_THROWS_AS(GepParams(0.0, 1.0, 1.0), ParameterError);
    CHECK_THROWS_AS(GepParams(1.0, -1.0, 1.0), ParameterError);
    CHECK_THROWS_AS(GepParams(1.0, 1.0, std::numeric_limits<double>::infinity()),
                    ParameterError);
    const GepParams p(1.0, 1.0, 1.0);
    CHECK_THROWS_AS(pdf(p, -0.1), ArgumentError);
    CHECK_THROWS_AS(cdf(p, -1.0), ArgumentError);
    CHECK_THROWS_AS(quantile(p, -0.1), ArgumentError);
    CHECK_THROWS_AS(quantile(p, 1.0), ArgumentError);
    CHECK_THROWS_AS(sample(p, 0, 1), ArgumentError);
}

TEST_CASE("pdf closed-form values") {
    // alpha = 1, x = 0 collapses to lambda beta / (1 - e^-lambda).
    CHECK(pdf(GepParams(1, 1, 1), 0.0) ==
          doctest::Approx(1.0 / (1.0 - std::exp(-1.0))).epsilon(1e-14));
    CHECK(pdf(GepParams(1, 1, 1), 0.0) == doctest::Approx(1.58198).epsilon(1e-5));
    // alpha > 1 makes the {.}^{alpha-1} factor vanish at 0.
    CHECK(pdf(GepParams(2, 0.5, 3), 0.0) == 0.0);
    // Fitted precipitation-model parameters against the EP-mixture route.
    const GepParams fitted(0.8003, 0.7336, 2.7329);
    CHECK(pdf(fitted, 1.5) == doctest::Approx(pdf_as_ep_mixture(fitted, 1.5)).epsilon(1e-10));
    CHECK(pdf(fitted, 1.5) == doctest::Approx(0.34609240804568336).epsilon(1e-12));
}

TEST_CASE("cdf values and limits") {
    for_grid([](const GepParams& p) { CHECK(cdf(p, 0.0) == 0.0); });
    CHECK(cdf(GepParams(1, 1, 1), 700.0) == doctest::Approx(1.0).epsilon(1e-12));
    const GepParams toys_fit(1.9821, 0.2369, 2.3144);
    const double x = quantile(toys_fit, 0.37);
    CHECK(x == doctest::Approx(2.2665685400321323).epsilon(1e-12));
    CHECK(cdf(toys_fit, x) == doctest::Approx(0.37).epsilon(1e-10));
}

TEST_CASE("survival values") {
    for_grid([](const GepParams& p) { CHECK(survival(p, 0.0) == 1.0); });
    const GepParams p(1, 1, 1);
    const double med = quantile(p, 0.5);
    CHECK(survival(p, med) == doctest::Approx(0.5).epsilon(1e-10));
    const GepParams q(2, 0.5, 3);
    CHECK(survival(q, 4.0) == doctest::Approx(1.0 - cdf(q, 4.0)).epsilon(1e-14));
}

TEST_CASE("hazard values and tail underflow") {
    CHECK(hazard(GepParams(1, 1, 1), 0.0) ==
          doctest::Approx(pdf(GepParams(1, 1, 1), 0.0)).epsilon(1e-14));
    CHECK(hazard(GepParams(2, 0.5, 3), 0.0) == 0.0);
    const GepParams dec(0.5, 1, 0.8);
    double prev = std::numeric_limits<double>::infinity();
    for (double x = 0.1; x <= 10.0; x += 0.3) {
        const double h = hazard(dec, x);
        CHECK(h < prev);
        prev = h;
    }
    CHECK_THROWS_AS(hazard(GepParams(1, 1, 1), 1e6), TailError);
}

TEST_CASE("quantile closed form and roundtrips") {
    for_grid([](const GepParams& p) { CHECK(quantile(p, 0.0) == 0.0); });
    // Median of (1, 2, 1) from the closed form with 2^{-1/alpha} = 0.5.
    const double med = -0.5 * std::log1p(std::log(1.0 - 0.5 * (1.0 - std::exp(-1.0))));
    CHECK(quantile(GepParams(1, 2, 1), 0.5) == doctest::Approx(med).epsilon(1e-12));
    CHECK(cdf(GepParams(1, 2, 1), quantile(GepParams(1, 2, 1), 0.5)) ==
          doctest::Approx(0.5).epsilon(1e-10));
    const GepParams fitted(0.8003, 0.7336, 2.7329);
    const double x99 = quantile(fitted, 0.99);
    CHECK(x99 > 0.0);
    CHECK(std::isfinite(x99));
    CHECK(cdf(fitted, x99) == doctest::Approx(0.99).epsilon(1e-8));

    const std::vector<double> qs = {1e-6, 0.01, 0.25, 0.5, 0.75, 0.99, 1.0 - 1e-6};
    for_grid([&](const GepParams& p) {
        for (double q : qs) {
            CHECK(std::fabs(cdf(p, quantile(p, q)) - q) < 1e-10);
        }
    });
}

TEST_CASE("sampling: determinism, KS fit, exponential limit") {
    const GepParams p(1, 1, 1);
    const auto a = sample(p, 5, 42);
    const auto b = sample(p, 5, 42);
    CHECK(a == b);
    CHECK(sample(p, 5, 43) != a);

    const GepParams p2(1, 1, 2);
    const auto draws = sample(p2, 10000, 7);
    CHECK(ks_statistic(draws, p2) < 1.63 / 100.0);  // 1% critical value

    // lambda -> 0 at alpha = 1 approaches exponential(beta).
    const GepParams p3(0.01, 2, 1);
    const auto limit_draws = sample(p3, 10000, 7);
    double mean = 0.0, sq = 0.0;
    for (double v : limit_draws) mean += v;
    mean /= static_cast<double>(limit_draws.size());
    for (double v : limit_draws) sq += (v - mean) * (v - mean);
    const double se = std::sqrt(sq / (limit_draws.size() - 1.0)) / 100.0;
    CHECK(std::fabs(mean - 0.5) < 3.0 * se);
}

TEST_CASE("eta prime sign") {
    CHECK(eta_prime_sign(GepParams(1, 1, 0.7), 2.0) == -1);
    CHECK(eta_prime_sign(GepParams(0.5, 1, 2), 2.0) == 1);  // alpha > e^0.5
    for (double x : {0.01, 0.5, 1.0, 5.0, 20.0}) {
        CHECK(eta_prime_sign(GepParams(1, 1, 1), x) == -1);
    }
    for_grid([](const GepParams& p) {
        for (double x : {0.1, 1.0, 4.0}) {
            const int s = eta_prime_sign(p, x);
            if (p.alpha() <= 1.0) CHECK(s == -1);
            if (p.alpha() > std::exp(p.lambda())) CHECK(s == 1);
        }
    });
}

TEST_CASE("hazard shape classification") {
    const HazardShape dec = classify_hazard_shape(GepParams(3, 1, 0.5), 64);
    CHECK(dec.tag == HazardTag::Decreasing);
    CHECK(dec.grid_size == 0);  // theorem shortcut
    const HazardShape inc = classify_hazard_shape(GepParams(0.25, 1, 4), 64);
    CHECK(inc.tag == HazardTag::Increasing);
    // Constructive upside-down bathtub inside 1 < alpha <= e^lambda.
    const HazardShape uub = classify_hazard_shape(GepParams(2, 1, 4), 256);
    CHECK(uub.tag == HazardTag::UpsideDownBathtub);
    CHECK(uub.grid_size == 256);
    CHECK(uub.sign_changes == 1);
    CHECK_THROWS_AS(classify_hazard_shape(GepParams(2, 1, 4), 8), ArgumentError);
}

TEST_CASE("normalization over the parameter grid") {
    for_grid([](const GepParams& p) {
        const QuadResult q = integrate_halfline([&](double x) { return pdf(p, x); }, 5e-9);
        CHECK(q.value == doctest::Approx(1.0).epsilon(1e-8));
    });
}

TEST_CASE("cdf monotone, survival complement, hazard identity") {
    for_grid([](const GepParams& p) {
        const double lo = std::log(quantile(p, 0.001));
        const double hi = std::log(quantile(p, 0.999));
        double prev = -1.0;
        for (int i = 0; i <= 40; ++i) {
            const double x = std::exp(lo + (hi - lo) * i / 40.0);
            const double f = cdf(p, x);
            CHECK(f >= prev);
            prev = f;
            const double s = survival(p, x);
            CHECK(std::fabs(s + f - 1.0) <= 1e-14);
            if (s > 1e-12) {
                CHECK(hazard(p, x) * s == doctest::Approx(pdf(p, x)).epsilon(1e-12));
            }
        }
    });
}

TEST_CASE("alpha = 1 reduces to the EP distribution") {
    for (double l : kLambdaGrid) {
        for (double b : kBetaGrid) {
            const GepParams p(l, b, 1.0);
            for (double q : {0.05, 0.3, 0.6, 0.9}) {
                const double x = quantile(p, q);
                CHECK(pdf(p, x) == doctest::Approx(ep_pdf(l, b, x)).epsilon(1e-13));
                CHECK(cdf(p, x) == doctest::Approx(ep_cdf(l, b, x)).epsilon(1e-13));
                CHECK(hazard(p, x) ==
                      doctest::Approx(ep_pdf(l, b, x) / (1.0 - ep_cdf(l, b, x))).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("monotone hazard theorems on the grid") {
    for_grid([](const GepParams& p) {
        const bool must_decrease = p.alpha() <= 1.0;
        const bool must_increase = p.alpha() > std::exp(p.lambda());
        if (!must_decrease && !must_increase) return;
        const double lo = std::log(quantile(p, 0.001));
        const double hi = std::log(quantile(p, 0.999));
        double prev = hazard(p, std::exp(lo));
        for (int i = 1; i < 64; ++i) {
            const double h = hazard(p, std::exp(lo + (hi - lo) * i / 63.0));
            if (must_decrease) CHECK(h <= prev * (1.0 + 1e-12));
            if (must_increase) CHECK(h >= prev * (1.0 - 1e-12));
            prev = h;
        }
    });
}

TEST_CASE("lambda -> 0 at alpha = 1 converges to exponential") {
    for (double b : kBetaGrid) {
        const GepParams p(1e-6, b, 1.0);
        double worst = 0.0;
        for (int i = 1; i <= 60; ++i) {
            const double x = 6.0 * i / (60.0 * b);
            worst = std::max(worst, std::fabs(cdf(p, x) - (-std::expm1(-b * x))));
        }
        CHECK(worst < 1e-5);
    }
}

}  // TEST_SUITE
