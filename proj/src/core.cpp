#include "gep/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gep/kernels.hpp"
#include "gep/special.hpp"

namespace gep {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_x(double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw ArgumentError("x must be nonnegative and finite");
}
}  // namespace

LogCore log_core(const GepParams& p, double x) {
    LogCore c;
    c.w = p.lambda() * std::expm1(-p.beta() * x);
    c.log_g = log1mexp(c.w);
    c.log_d = log1mexp(-p.lambda());
    c.log_ep_cdf = std::min(c.log_g - c.log_d, 0.0);
    return c;
}

double log_pdf(const GepParams& p, double x) {
    check_x(x);
    const LogCore c = log_core(p, x);
    double shape_term = 0.0;
    if (p.alpha() != 1.0) shape_term = (p.alpha() - 1.0) * c.log_g;
    return std::log(p.alpha() * p.lambda() * p.beta()) - p.alpha() * c.log_d + shape_term +
           c.w - p.beta() * x;
}

double pdf(const GepParams& p, double x) {
    return std::exp(log_pdf(p, x));
}

double cdf(const GepParams& p, double x) {
    check_x(x);
    const LogCore c = log_core(p, x);
    return std::exp(p.alpha() * c.log_ep_cdf);
}

double survival(const GepParams& p, double x) {
    check_x(x);
    const LogCore c = log_core(p, x);
    return -std::expm1(p.alpha() * c.log_ep_cdf);
}

double hazard(const GepParams& p, double x) {
    check_x(x);
    const LogCore c = log_core(p, x);
    const double t = p.alpha() * c.log_ep_cdf;
    if (t == 0.0)
        throw TailError("hazard: survival underflowed at x", x);
    const double log_s = log1mexp(t);
    double shape_term = 0.0;
    if (p.alpha() != 1.0) shape_term = (p.alpha() - 1.0) * c.log_g;
    const double log_f = std::log(p.alpha() * p.lambda() * p.beta()) -
                         p.alpha() * c.log_d + shape_term + c.w - p.beta() * x;
    return std::exp(log_f - log_s);
}

double quantile(const GepParams& p, double q) {
    if (!(q >= 0.0 && q < 1.0)) throw ArgumentError("quantile: q must lie in [0, 1)");
    if (q == 0.0) return 0.0;
    // x_q = -log(u)/beta with u = 1 + log(inner)/lambda and
    // inner = 1 - q^{1/alpha}(1-e^{-lambda}); the inner argument provably
    // stays inside (e^{-lambda}, 1].  Two conditioning regimes:
    //  - d*q^{1/alpha} < 1/2 (small to moderate q): log(inner) via log1p is
    //    exact enough, and u near 1 is handled by log1p(L/lambda).
    //  - otherwise (q toward 1): lambda + log(inner) is formed directly as
    //    log1p(e^lambda d (1 - q^{1/alpha})), avoiding the -lambda
    //    cancellation; 1 - q^{1/alpha} comes from expm1.
    const double d = -std::expm1(-p.lambda());
    const double qa = std::exp(std::log(q) / p.alpha());
    double x;
    if (d * qa < 0.5) {
        const double inner_log = std::log1p(-d * qa);  // in (-0.7, 0)
        x = -std::log1p(inner_log / p.lambda()) / p.beta();
    } else {
        const double log_d = log1mexp(-p.lambda());
        const double one_minus_qa = -std::expm1(std::log(q) / p.alpha());
        const double log_a = p.lambda() + log_d + std::log(one_minus_qa);
        double lam_plus_log_inner;
        if (log_a > 700.0) {
            lam_plus_log_inner = log_a;
        } else {
            const double a = std::exp(log_a);
            if (a == 0.0)
                throw TailError("quantile: inner logarithm underflowed for q", q);
            lam_plus_log_inner = std::log1p(a);
        }
        x = (std::log(p.lambda()) - std::log(lam_plus_log_inner)) / p.beta();
    }
    if (!std::isfinite(x))
        throw TailError("quantile: result overflowed for q", q);
    return std::max(x, 0.0);
}

std::vector<double> sample(const GepParams& p, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw ArgumentError("sample: n must be positive");
    UniformStream stream(seed);
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = stream.next();
    std::vector<double> out(n);
    kernels::quantile_batch(p, u, out);
    return out;
}

int eta_prime_sign(const GepParams& p, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw ArgumentError("eta_prime_sign: x must be positive");
    if (p.alpha() == 1.0) return -1;  // only the -lambda beta^2 e^{-beta x} term survives
    const double z = std::exp(-p.beta() * x);
    const double w = p.lambda() * std::expm1(-p.beta() * x);
    // rho = e^w / (1 - e^w); eta'(x) has the sign of
    //   (alpha-1) [lambda z rho^2 + (1 + lambda z) rho] - 1.
    const double rho = 1.0 / std::expm1(-w);
    const double expr =
        (p.alpha() - 1.0) * (p.lambda() * z * rho * rho + (1.0 + p.lambda() * z) * rho) - 1.0;
    if (expr > 0.0) return 1;
    if (expr < 0.0) return -1;
    return 0;
}

HazardShape classify_hazard_shape(const GepParams& p, int grid_size) {
    if (grid_size < 16) throw ArgumentError("classify_hazard_shape: grid_size must be >= 16");
    if (p.alpha() <= 1.0) return {HazardTag::Decreasing, 0, 0};
    if (p.alpha() > std::exp(p.lambda())) return {HazardTag::Increasing, 0, 0};

    const double x_lo = quantile(p, 0.001);
    const double x_hi = quantile(p, 0.999);
    const double log_lo = std::log(x_lo);
    const double step = (std::log(x_hi) - log_lo) / (grid_size - 1);
    std::vector<double> h(grid_size);
    double h_max = 0.0;
    for (int i = 0; i < grid_size; ++i) {
        h[i] = hazard(p, std::exp(log_lo + i * step));
        h_max = std::max(h_max, h[i]);
    }

    int changes = 0;
    int rising_to_falling = 0;
    int prev = 0;
    for (int i = 0; i + 1 < grid_size; ++i) {
        const double d = h[i + 1] - h[i];
        if (std::fabs(d) <= 1e-12 * h_max) continue;  // flat within noise
        const int s = d > 0.0 ? 1 : -1;
        if (prev != 0 && s != prev) {
            ++changes;
            if (prev == 1 && s == -1) ++rising_to_falling;
        }
        prev = s;
    }

    HazardTag tag;
    if (changes == 0) {
        tag = prev >= 0 ? HazardTag::Increasing : HazardTag::Decreasing;
    } else if (changes == 1 && rising_to_falling == 1) {
        tag = HazardTag::UpsideDownBathtub;
    } else {
        tag = HazardTag::Undetermined;
    }
    return {tag, grid_size, changes};
}

}  // namespace gep
