#include "gep/stress.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gep/core.hpp"
#include "gep/kernels.hpp"
#include "gep/special.hpp"
#include "optim.hpp"

namespace gep {

namespace {

void check_theta(const SsParams& t) {
    if (!(t.lambda > 0.0 && t.beta > 0.0 && t.alpha1 > 0.0 && t.alpha2 > 0.0) ||
        !std::isfinite(t.lambda + t.beta + t.alpha1 + t.alpha2))
        throw ParameterError("stress_strength: parameters must be positive and finite");
}

}  // namespace

double stress_strength_r(double alpha1, double alpha2) {
    if (!(alpha1 > 0.0 && alpha2 > 0.0))
        throw ParameterError("stress_strength_r: shapes must be positive");
    return alpha1 / (alpha1 + alpha2);
}

double ss_loglik(const SsParams& theta, const Sample& x_sample, const Sample& y_sample) {
    check_theta(theta);
    const auto& xs = x_sample.values();
    const auto& ys = y_sample.values();
    const double n = static_cast<double>(xs.size());
    const double m = static_cast<double>(ys.size());
    const double log_d = log1mexp(-theta.lambda);

    // Grouped form: (n+m)[log(lambda beta) - lambda] + n log a1 + m log a2
    //   - (a1 n + a2 m) log D + (a1-1) sum log g(x) + (a2-1) sum log g(y)
    //   + lambda [sum e^{-beta x} + sum e^{-beta y}]
    const auto log_g = [&](double v) {
        return log1mexp(theta.lambda * std::expm1(-theta.beta * v));
    };
    const double sum_log_g_x =
        kernels::reduce_sum(xs.size(), [&](std::size_t i) { return log_g(xs[i]); });
    const double sum_log_g_y =
        kernels::reduce_sum(ys.size(), [&](std::size_t i) { return log_g(ys[i]); });
    const double sum_exp_x = kernels::reduce_sum(
        xs.size(), [&](std::size_t i) { return std::exp(-theta.beta * xs[i]); });
    const double sum_exp_y = kernels::reduce_sum(
        ys.size(), [&](std::size_t i) { return std::exp(-theta.beta * ys[i]); });

    return (n + m) * (std::log(theta.lambda * theta.beta) - theta.lambda) +
           n * std::log(theta.alpha1) + m * std::log(theta.alpha2) -
           (theta.alpha1 * n + theta.alpha2 * m) * log_d +
           (theta.alpha1 - 1.0) * sum_log_g_x + (theta.alpha2 - 1.0) * sum_log_g_y +
           theta.lambda * (sum_exp_x + sum_exp_y);
}

std::array<double, 4> ss_score(const SsParams& theta, const Sample& x_sample,
                               const Sample& y_sample) {
    check_theta(theta);
    const auto& xs = x_sample.values();
    const auto& ys = y_sample.values();
    const double n = static_cast<double>(xs.size());
    const double m = static_cast<double>(ys.size());
    const double log_d = log1mexp(-theta.lambda);
    const double inv_em1 = std::exp(-theta.lambda) / -std::expm1(-theta.lambda);

    // Per-observation pieces with shape a:
    //   d/d lambda: (z-1)(1 - (a-1) rho)
    //   d/d beta:   -x + lambda x z ((a-1) rho - 1)
    //   d/d shape:  log g
    const auto obs = [&](double v, double a) {
        const double z = std::exp(-theta.beta * v);
        const double c = -std::expm1(-theta.beta * v);
        const double rho = 1.0 / std::expm1(theta.lambda * c);
        const double lg = log1mexp(theta.lambda * std::expm1(-theta.beta * v));
        return std::array<double, 3>{(z - 1.0) * (1.0 - (a - 1.0) * rho),
                                     -v + theta.lambda * v * z * ((a - 1.0) * rho - 1.0), lg};
    };
    const auto sx = kernels::reduce_sum_vec<3>(
        xs.size(), [&](std::size_t i) { return obs(xs[i], theta.alpha1); });
    const auto sy = kernels::reduce_sum_vec<3>(
        ys.size(), [&](std::size_t i) { return obs(ys[i], theta.alpha2); });

    return {
        (n + m) / theta.lambda - (theta.alpha1 * n + theta.alpha2 * m) * inv_em1 + sx[0] + sy[0],
        (n + m) / theta.beta + sx[1] + sy[1],
        n / theta.alpha1 - n * log_d + sx[2],
        m / theta.alpha2 - m * log_d + sy[2],
    };
}

SsResult fit_ss(const Sample& x_sample, const Sample& y_sample, const FitConfig& config) {
    if (x_sample.size() < 2 || y_sample.size() < 2)
        throw ArgumentError("fit_ss: insufficient data (need n, m >= 2)");

    const auto eval = [&](const std::vector<double>& t, std::vector<double>& grad) {
        const SsParams theta{std::exp(t[0]), std::exp(t[1]), std::exp(t[2]), std::exp(t[3])};
        const double ll = ss_loglik(theta, x_sample, y_sample);
        const auto sc = ss_score(theta, x_sample, y_sample);
        grad[0] = -sc[0] * theta.lambda;
        grad[1] = -sc[1] * theta.beta;
        grad[2] = -sc[2] * theta.alpha1;
        grad[3] = -sc[3] * theta.alpha2;
        return -ll;
    };

    const double pooled_mean =
        (x_sample.mean() * x_sample.size() + y_sample.mean() * y_sample.size()) /
        (x_sample.size() + y_sample.size());
    const double beta0 = 1.0 / pooled_mean;
    const double lambda_lattice[4] = {0.5, 2.0, 8.0, 32.0};
    const double alpha_lattice[3] = {0.5, 1.0, 2.5};
    std::vector<std::array<double, 4>> starts;
    for (double l0 : lambda_lattice)
        for (double a0 : alpha_lattice) starts.push_back({l0, beta0, a0, a0});
    const std::size_t lattice_size = starts.size();
    UniformStream stream(config.seed);
    for (int k = 0; k < config.multistart_points; ++k) {
        auto s = starts[k % lattice_size];
        for (double& v : s) v *= std::exp(0.5 * inverse_normal_cdf(stream.next()));
        starts.push_back(s);
    }

    const double bound = std::log(config.param_bound);
    const std::vector<double> lo(4, -bound), hi(4, bound);
    std::vector<detail::OptimResult> runs(starts.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(starts.size()); ++s) {
        std::vector<double> t0(4);
        for (int i = 0; i < 4; ++i) t0[i] = std::log(starts[s][i]);
        runs[s] = detail::bfgs_box(eval, std::move(t0), lo, hi, config.max_iterations,
                                   config.gradient_tolerance);
    }

    int best = -1;
    for (std::size_t s = 0; s < runs.size(); ++s) {
        if (!runs[s].converged) continue;
        if (best < 0 || runs[s].f < runs[best].f ||
            (runs[s].f == runs[best].f && runs[s].x < runs[best].x))
            best = static_cast<int>(s);
    }
    if (best < 0) {
        double incumbent = std::numeric_limits<double>::infinity();
        for (const auto& r : runs) incumbent = std::min(incumbent, r.f);
        throw OptimizationError("fit_ss: no start converged; best incumbent loglik " +
                                std::to_string(-incumbent));
    }
    const detail::OptimResult& win = runs[best];

    SsResult out;
    out.lambda = std::exp(win.x[0]);
    out.beta = std::exp(win.x[1]);
    out.alpha1 = std::exp(win.x[2]);
    out.alpha2 = std::exp(win.x[3]);
    out.r_hat = out.alpha1 / (out.alpha1 + out.alpha2);
    out.loglik = -win.f;
    out.converged = true;
    out.iterations = win.iterations;
    for (int i = 0; i < 4; ++i)
        out.at_bound[i] = win.x[i] <= lo[i] + 1e-9 || win.x[i] >= hi[i] - 1e-9;
    return out;
}

}  // namespace gep
