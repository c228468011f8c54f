#include "gep/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gep/core.hpp"
#include "gep/kernels.hpp"
#include "gep/quadrature.hpp"
#include "optim.hpp"

namespace gep {

namespace {

constexpr double kFisherTol = 1e-7;
constexpr double kFisherRelTol = 1e-9;

// Per-observation score.  With z = e^{-beta x}, c = 1 - z and
// rho = 1/(e^{lambda c} - 1):
//   d/d lambda = 1/lambda - alpha/(e^lambda - 1) + (z-1)(1 - (alpha-1) rho)
//   d/d beta   = 1/beta - x + lambda x z ((alpha-1) rho - 1)
//   d/d alpha  = 1/alpha - log(1-e^{-lambda}) + log(1 - e^{w})
std::array<double, 3> score_obs(const GepParams& p, double x) {
    const double z = std::exp(-p.beta() * x);
    const double c = -std::expm1(-p.beta() * x);
    const double rho = 1.0 / std::expm1(p.lambda() * c);
    const double log_d = log1mexp(-p.lambda());
    const double log_g = log1mexp(p.lambda() * std::expm1(-p.beta() * x));
    const double am1 = p.alpha() - 1.0;
    return {
        1.0 / p.lambda() - p.alpha() / std::expm1(p.lambda()) + (z - 1.0) * (1.0 - am1 * rho),
        1.0 / p.beta() - x + p.lambda() * x * z * (am1 * rho - 1.0),
        1.0 / p.alpha() - log_d + log_g,
    };
}

std::array<ConfInterval, 3> wald_intervals(const GepParams& params, const Matrix3& cov,
                                           double level) {
    const double z = inverse_normal_cdf(0.5 * (1.0 + level));
    const double theta[3] = {params.lambda(), params.beta(), params.alpha()};
    std::array<ConfInterval, 3> out{};
    for (int i = 0; i < 3; ++i) {
        const double v = cov[i][i];
        if (!std::isfinite(v) || v < 0.0) {
            out[i].available = false;
            continue;
        }
        const double half = z * std::sqrt(v);
        out[i] = {theta[i] - half, theta[i] + half, true};
    }
    return out;
}

bool invert3(const Matrix3& m, Matrix3& out) {
    const double a = m[0][0], b = m[0][1], c = m[0][2];
    const double d = m[1][0], e = m[1][1], f = m[1][2];
    const double g = m[2][0], h = m[2][1], i = m[2][2];
    const double det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
    if (!std::isfinite(det) || det == 0.0) return false;
    out[0][0] = (e * i - f * h) / det;
    out[0][1] = (c * h - b * i) / det;
    out[0][2] = (b * f - c * e) / det;
    out[1][0] = (f * g - d * i) / det;
    out[1][1] = (a * i - c * g) / det;
    out[1][2] = (c * d - a * f) / det;
    out[2][0] = (d * h - e * g) / det;
    out[2][1] = (b * g - a * h) / det;
    out[2][2] = (a * e - b * d) / det;
    return true;
}

struct StartPoint {
    double lambda, beta, alpha;
};

std::vector<StartPoint> make_starts(const Sample& sample, const FitConfig& config,
                                    bool fit_alpha) {
    const double beta0 = 1.0 / sample.mean();
    const double lambda_lattice[4] = {0.5, 2.0, 8.0, 32.0};
    const double alpha_lattice[3] = {0.5, 1.0, 2.5};
    std::vector<StartPoint> starts;
    for (double l0 : lambda_lattice) {
        if (fit_alpha) {
            for (double a0 : alpha_lattice) starts.push_back({l0, beta0, a0});
        } else {
            starts.push_back({l0, beta0, 1.0});
        }
    }
    const std::size_t lattice_size = starts.size();
    UniformStream stream(config.seed);
    for (int k = 0; k < config.multistart_points; ++k) {
        StartPoint s = starts[k % lattice_size];
        s.lambda *= std::exp(0.5 * inverse_normal_cdf(stream.next()));
        s.beta *= std::exp(0.5 * inverse_normal_cdf(stream.next()));
        if (fit_alpha) s.alpha *= std::exp(0.5 * inverse_normal_cdf(stream.next()));
        starts.push_back(s);
    }
    return starts;
}

FitResult fit_impl(const Sample& sample, const FitConfig& config, bool fit_alpha) {
    if (sample.size() < 2) throw ArgumentError("fit: insufficient data (need n >= 2)");
    const std::vector<double>& xs = sample.values();
    const std::size_t n = xs.size();
    const std::size_t dim = fit_alpha ? 3 : 2;

    // Objective in t = (log lambda, log beta[, log alpha]).
    const auto eval = [&](const std::vector<double>& t, std::vector<double>& grad) {
        const GepParams p(std::exp(t[0]), std::exp(t[1]),
                          fit_alpha ? std::exp(t[2]) : 1.0);
        const double ll =
            kernels::reduce_sum(n, [&](std::size_t i) { return log_pdf(p, xs[i]); });
        const auto sc =
            kernels::reduce_sum_vec<3>(n, [&](std::size_t i) { return score_obs(p, xs[i]); });
        grad[0] = -sc[0] * p.lambda();
        grad[1] = -sc[1] * p.beta();
        if (fit_alpha) grad[2] = -sc[2] * p.alpha();
        return -ll;
    };

    const double bound = std::log(config.param_bound);
    const std::vector<double> lo(dim, -bound), hi(dim, bound);
    const std::vector<StartPoint> starts = make_starts(sample, config, fit_alpha);
    std::vector<detail::OptimResult> runs(starts.size());

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(starts.size()); ++s) {
        std::vector<double> t0 = {std::log(starts[s].lambda), std::log(starts[s].beta)};
        if (fit_alpha) t0.push_back(std::log(starts[s].alpha));
        runs[s] = detail::bfgs_box(eval, std::move(t0), lo, hi, config.max_iterations,
                                   config.gradient_tolerance);
    }

    // Best converged run by objective; lexicographic parameter tie-break.
    int best = -1;
    for (std::size_t s = 0; s < runs.size(); ++s) {
        if (!runs[s].converged) continue;
        if (best < 0) {
            best = static_cast<int>(s);
            continue;
        }
        const double tie = 1e-10 * (std::fabs(runs[best].f) + 1.0);
        if (runs[s].f < runs[best].f - tie) {
            best = static_cast<int>(s);
        } else if (std::fabs(runs[s].f - runs[best].f) <= tie &&
                   runs[s].x < runs[best].x) {
            best = static_cast<int>(s);
        }
    }
    if (best < 0) {
        double incumbent = std::numeric_limits<double>::infinity();
        for (const auto& r : runs) incumbent = std::min(incumbent, r.f);
        throw OptimizationError("fit: no start converged; best incumbent loglik " +
                                std::to_string(-incumbent));
    }
    const detail::OptimResult& win = runs[best];

    FitResult out;
    out.params = GepParams(std::exp(win.x[0]), std::exp(win.x[1]),
                           fit_alpha ? std::exp(win.x[2]) : 1.0);
    out.loglik = -win.f;
    out.converged = true;
    out.iterations = win.iterations;
    out.grad_max_norm = win.proj_grad_norm;
    out.alpha_fixed = !fit_alpha;
    out.small_sample = sample.size() < 4;
    for (std::size_t i = 0; i < dim; ++i)
        out.at_bound[i] = win.x[i] <= lo[i] + 1e-9 || win.x[i] >= hi[i] - 1e-9;

    const Matrix3 info = fisher_info(out.params, static_cast<int>(n));
    if (fit_alpha) {
        if (!invert3(info, out.covariance)) out.covariance = {};
    } else {
        // 2x2 sub-problem inverse; the alpha row/column stays zero.
        const double a = info[0][0], b = info[0][1], d = info[1][1];
        const double det = a * d - b * b;
        out.covariance = {};
        if (det != 0.0 && std::isfinite(det)) {
            out.covariance[0][0] = d / det;
            out.covariance[0][1] = out.covariance[1][0] = -b / det;
            out.covariance[1][1] = a / det;
        }
    }
    out.intervals = wald_intervals(out.params, out.covariance, 0.95);
    return out;
}

}  // namespace

double total_loglik(const GepParams& p, const Sample& sample) {
    const std::vector<double>& xs = sample.values();
    return kernels::reduce_sum(xs.size(), [&](std::size_t i) { return log_pdf(p, xs[i]); });
}

std::array<double, 3> score(const GepParams& p, const Sample& sample) {
    const std::vector<double>& xs = sample.values();
    return kernels::reduce_sum_vec<3>(xs.size(),
                                      [&](std::size_t i) { return score_obs(p, xs[i]); });
}

FitResult fit_gep(const Sample& sample, const FitConfig& config) {
    return fit_impl(sample, config, true);
}

FitResult fit_ep(const Sample& sample, const FitConfig& config) {
    return fit_impl(sample, config, false);
}

Matrix3 fisher_info(const GepParams& p, int n) {
    if (n < 1) throw ArgumentError("fisher_info: n must be positive");
    const double lambda = p.lambda(), beta = p.beta(), alpha = p.alpha();
    const double am1 = alpha - 1.0;
    const double d = -std::expm1(-lambda);
    const double inv_em1 = std::exp(-lambda) / d;  // 1/(e^lambda - 1)

    // Expectation building blocks; each integrand is bounded on (0, inf).
    const auto with_core = [&](auto f) {
        return [&, f](double x) {
            const LogCore c = log_core(p, x);
            const double z = std::exp(-beta * x);
            const double cc = -std::expm1(-beta * x);  // 1 - z
            return f(x, z, cc, c);
        };
    };
    const double e_x =
        gep_expectation(p, [](double x) { return x; }, kFisherTol, kFisherRelTol).value;
    const double e_c2r = gep_expectation(p, with_core([](double, double, double cc, const LogCore& c) {
                             return cc * cc * std::exp(c.w - 2.0 * c.log_g);
                         }), kFisherTol, kFisherRelTol).value;
    const double e_xzcr = gep_expectation(p, with_core([](double x, double z, double cc, const LogCore& c) {
                              return x * z * cc * std::exp(c.w - 2.0 * c.log_g);
                          }), kFisherTol, kFisherRelTol).value;
    const double e_crho = gep_expectation(p, with_core([](double, double, double cc, const LogCore& c) {
                              return cc * std::exp(c.w - c.log_g);
                          }), kFisherTol, kFisherRelTol).value;
    const double e_x2zr = gep_expectation(p, with_core([am1](double x, double z, double, const LogCore& c) {
                              const double rho = std::exp(c.w - c.log_g);
                              return x * x * z * (am1 * rho - 1.0);
                          }), kFisherTol, kFisherRelTol).value;
    const double e_x2z2r = gep_expectation(p, with_core([](double x, double z, double, const LogCore& c) {
                               return x * x * z * z * std::exp(c.w - 2.0 * c.log_g);
                           }), kFisherTol, kFisherRelTol).value;
    const double e_xzrho = gep_expectation(p, with_core([](double x, double z, double, const LogCore& c) {
                               return x * z * std::exp(c.w - c.log_g);
                           }), kFisherTol, kFisherRelTol).value;

    const double k_ll = 1.0 / (lambda * lambda) - alpha * std::exp(-lambda) / (d * d) +
                        am1 * e_c2r;
    const double k_lb = -(e_x - 1.0 / beta) / lambda + am1 * lambda * e_xzcr;
    const double k_la = inv_em1 - e_crho;
    const double k_bb = 1.0 / (beta * beta) + lambda * e_x2zr + am1 * lambda * lambda * e_x2z2r;
    const double k_ba = -lambda * e_xzrho;
    const double k_aa = 1.0 / (alpha * alpha);

    const double nn = static_cast<double>(n);
    return {{{nn * k_ll, nn * k_lb, nn * k_la},
             {nn * k_lb, nn * k_bb, nn * k_ba},
             {nn * k_la, nn * k_ba, nn * k_aa}}};
}

std::array<ConfInterval, 3> confidence_intervals(const FitResult& fit, double level) {
    if (!(level > 0.5 && level < 1.0))
        throw ArgumentError("confidence_intervals: level must lie in (0.5, 1)");
    if (!fit.converged) throw ArgumentError("confidence_intervals: fit did not converge");
    return wald_intervals(fit.params, fit.covariance, level);
}

LrResult lr_test(const Sample& sample, const FitConfig& config) {
    const FitResult gep_fit = fit_gep(sample, config);
    const FitResult ep_fit = fit_ep(sample, config);
    LrResult r;
    r.statistic = std::max(0.0, 2.0 * (gep_fit.loglik - ep_fit.loglik));
    r.df = 1;
    r.p_value = chi2_sf(r.statistic, r.df);
    return r;
}

}  // namespace gep
