#include <doctest.h>

#include <cmath>
#include <vector>

#include "gep/core.hpp"
#include "gep/kernels.hpp"
#include "gep/special.hpp"

using namespace gep;

namespace {

std::vector<double> test_points(std::size_t n, std::uint64_t seed) {
    UniformStream stream(seed);
    std::vector<double> u(n);
    for (auto& v : u) v = stream.next();
    return u;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("parallel batch transforms match the serial reference exactly") {
    const GepParams p(1.5, 0.8, 2.5);
    const auto u = test_points(50000, 99);
    std::vector<double> xs(u.size());
    kernels::quantile_batch_serial(p, u, xs);

    std::vector<double> serial(u.size()), parallel(u.size());
    kernels::pdf_batch_serial(p, xs, serial);
    kernels::pdf_batch(p, xs, parallel);
    CHECK(serial == parallel);

    kernels::cdf_batch_serial(p, xs, serial);
    kernels::cdf_batch(p, xs, parallel);
    CHECK(serial == parallel);

    kernels::hazard_batch_serial(p, xs, serial);
    kernels::hazard_batch(p, xs, parallel);
    CHECK(serial == parallel);

    kernels::quantile_batch_serial(p, u, serial);
    kernels::quantile_batch(p, u, parallel);
    CHECK(serial == parallel);

    kernels::log_pdf_batch_serial(p, xs, serial);
    kernels::log_pdf_batch(p, xs, parallel);
    CHECK(serial == parallel);
}

TEST_CASE("blocked reduction matches the serial reference and is repeatable") {
    const GepParams p(1.0, 1.0, 2.0);
    const auto u = test_points(120000, 7);
    std::vector<double> xs(u.size());
    kernels::quantile_batch(p, u, xs);

    const auto f = [&](std::size_t i) { return log_pdf(p, xs[i]); };
    const double blocked1 = kernels::reduce_sum(xs.size(), f);
    const double blocked2 = kernels::reduce_sum(xs.size(), f);
    const double naive = kernels::reduce_sum_serial(xs.size(), f);
    CHECK(blocked1 == blocked2);  // fixed block combine order
    CHECK(blocked1 == doctest::Approx(naive).epsilon(1e-12));

    const auto fv = [&](std::size_t i) {
        return std::array<double, 2>{xs[i], xs[i] * xs[i]};
    };
    const auto v1 = kernels::reduce_sum_vec<2>(xs.size(), fv);
    const auto v2 = kernels::reduce_sum_vec<2>(xs.size(), fv);
    CHECK(v1 == v2);
    double m1 = 0.0;
    for (double x : xs) m1 += x;
    CHECK(v1[0] == doctest::Approx(m1).epsilon(1e-12));
}

TEST_CASE("batch kernels surface element errors") {
    const GepParams p(1, 1, 1);
    std::vector<double> xs = {0.5, 1.0, 1e6};  // far-tail survival underflow
    std::vector<double> out(xs.size());
    CHECK_THROWS_AS(kernels::hazard_batch(p, xs, out), TailError);
    std::vector<double> tiny(2);
    CHECK_THROWS_AS(kernels::pdf_batch(p, xs, tiny), ArgumentError);  // size mismatch
}

TEST_CASE("empty and single-block reductions") {
    CHECK(kernels::reduce_sum(0, [](std::size_t) { return 1.0; }) == 0.0);
    CHECK(kernels::reduce_sum(3, [](std::size_t i) { return static_cast<double>(i); }) == 3.0);
}

}  // TEST_SUITE
