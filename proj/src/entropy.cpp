#include "gep/entropy.hpp"

#include <cmath>

#include "gep/core.hpp"
#include "gep/quadrature.hpp"

namespace gep {

namespace {

constexpr double kOracleTol = 1e-6;

bool small_enough(double term, double sum, const SeriesControl& c) {
    return std::fabs(term) <= c.rel_tol * std::fabs(sum) + c.abs_tol;
}

// e^{-lambda j} A_j(lambda, gamma): term_k = e^{-lambda j} X^k / (k! (k+gamma))
// with X = lambda(gamma+j), summed outward from the Poisson mode so large X
// never overflows.
double scaled_a_j(double lambda, double gamma, int j, const SeriesControl& control) {
    const double x = lambda * (gamma + j);
    const int k0 = static_cast<int>(x);
    const double log_t0 =
        -lambda * j + (k0 > 0 ? k0 * std::log(x) - log_factorial(k0) : 0.0);
    const double t0 = std::exp(log_t0);
    double sum = t0 / (k0 + gamma);
    double tk = t0;
    int small = 0;
    for (int k = k0 + 1;; ++k) {
        tk *= x / k;
        const double term = tk / (k + gamma);
        sum += term;
        if (small_enough(term, sum, control)) {
            if (++small >= 2) break;
        } else {
            small = 0;
        }
        if (k >= k0 + control.max_terms)
            throw SeriesError("a_j_series: did not converge within max_terms", sum, term);
    }
    tk = t0;
    for (int k = k0 - 1; k >= 0; --k) {
        tk *= (k + 1.0) / x;
        const double term = tk / (k + gamma);
        sum += term;
        if (small_enough(term, sum, control)) break;
    }
    return sum;
}

// sum_k (1-e^{-lambda})^k / (k (k+alpha)) under the series control.
double log_expansion_sum(double lambda, double alpha, const SeriesControl& control) {
    const double d = -std::expm1(-lambda);
    double pow_d = 1.0;
    double sum = 0.0;
    int small = 0;
    for (int k = 1; k <= control.max_terms; ++k) {
        pow_d *= d;
        const double term = pow_d / (k * (k + alpha));
        sum += term;
        if (small_enough(term, sum, control)) {
            if (++small >= 2) return sum;
        } else {
            small = 0;
        }
    }
    throw SeriesError("entropy: log-expansion series did not converge within max_terms", sum,
                      pow_d);
}

}  // namespace

double a_j_series(double lambda, double gamma, int j, const SeriesControl& control) {
    if (!(lambda > 0.0)) throw ParameterError("a_j_series: lambda must be positive");
    if (!(gamma > 0.0)) throw ArgumentError("a_j_series: gamma must be positive");
    if (j < 0) throw ArgumentError("a_j_series: j must be nonnegative");
    return scaled_a_j(lambda, gamma, j, control) * std::exp(lambda * static_cast<double>(j));
}

double renyi_entropy(const GepParams& p, const EntropyQuery& query) {
    const double gamma = query.gamma;
    if (!(gamma > 0.0) || gamma == 1.0)
        throw ArgumentError("renyi_entropy: gamma must be positive and != 1");
    const double tail_power = (p.alpha() - 1.0) * gamma + 1.0;
    if (!(tail_power > 0.0))
        throw ArgumentError("renyi_entropy: requires (alpha-1)*gamma + 1 > 0");

    // Series route: S = sum_j c_j e^{-lambda j} A_j with c_j the coefficients
    // of (1-z)^{(alpha-1)gamma}.  The tail decays like j^{-(tail_power+1)};
    // when the term test has not fired by max_terms the known exponent gives
    // a one-step Richardson estimate from the half- and full-length sums.
    const SeriesControl& c = query.control;
    const int cap = c.max_terms;
    double coef = 1.0;
    double sum = 0.0;
    double comp = 0.0;
    double quarter_sum = 0.0, half_sum = 0.0;
    bool converged = false;
    int small = 0;
    int j = 0;
    for (; j < cap; ++j) {
        const double term = coef * scaled_a_j(p.lambda(), gamma, j, c);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (j == cap / 4 - 1) quarter_sum = sum + comp;
        if (j == cap / 2 - 1) half_sum = sum + comp;
        if (small_enough(term, sum, c)) {
            if (++small >= 2) {
                converged = true;
                break;
            }
        } else {
            small = 0;
        }
        coef *= -(tail_power - 1.0 - j) / (j + 1.0);
        if (coef == 0.0) {  // integer expansion exponent: finite sum
            converged = true;
            break;
        }
    }
    double series_sum = sum + comp;
    if (!converged) {
        const double f1 = std::pow(2.0, tail_power) - 1.0;
        const double r1a = half_sum + (half_sum - quarter_sum) / f1;
        const double r1b = series_sum + (series_sum - half_sum) / f1;
        series_sum = r1b + (r1b - r1a) / (std::pow(2.0, tail_power + 1.0) - 1.0);
    }

    const double log_d = log1mexp(-p.lambda());
    const double series_value =
        ((gamma - 1.0) * std::log(p.beta()) + gamma * std::log(p.alpha() * p.lambda()) -
         gamma * p.lambda() - p.alpha() * gamma * log_d + std::log(series_sum)) /
        (1.0 - gamma);

    // Quadrature route: integral of f^gamma = E[f^{gamma-1}].  A rough pass
    // sets the scale so the final absolute tolerance is ~1e-8 relative.
    const auto integrand = [&](double x) { return std::exp((gamma - 1.0) * log_pdf(p, x)); };
    const QuadResult rough = gep_expectation(p, integrand, 1e-4);
    const QuadResult q =
        gep_expectation(p, integrand, 1e-8 * std::max(1.0, std::fabs(rough.value)));
    const double quad_value = std::log(q.value) / (1.0 - gamma);

    if (!(std::fabs(series_value - quad_value) <= kOracleTol))
        throw ValidationError("renyi_entropy: series and quadrature disagree", series_value,
                              quad_value);
    return series_value;
}

ShannonResult shannon_entropy(const GepParams& p, const SeriesControl& control) {
    const QuadResult q =
        gep_expectation(p, [&](double x) { return -log_pdf(p, x); }, 1e-9);

    ShannonResult r;
    r.value = q.value;
    // Closed-form candidate:  -log(alpha lambda beta) + log D + (alpha-1)/alpha
    //   + alpha sum_k D^k/(k(k+alpha)) + beta E(X).
    const double log_d = log1mexp(-p.lambda());
    const double mean = gep_raw_moment(p, 1, control);
    r.series_value = -std::log(p.alpha() * p.lambda() * p.beta()) + log_d +
                     (p.alpha() - 1.0) / p.alpha() +
                     p.alpha() * log_expansion_sum(p.lambda(), p.alpha(), control) +
                     p.beta() * mean;
    r.series_discrepancy = std::fabs(r.value - r.series_value);
    r.series_validated = r.series_discrepancy <= kOracleTol;
    return r;
}

double mean_exp_neg_beta_x(const GepParams& p, const SeriesControl& control) {
    const QuadResult q = gep_expectation(
        p, [&](double x) { return std::exp(-p.beta() * x); }, 1e-10);
    const double series =
        1.0 - (p.alpha() / p.lambda()) * log_expansion_sum(p.lambda(), p.alpha(), control);
    if (!(std::fabs(series - q.value) <= kOracleTol))
        throw ValidationError("mean_exp_neg_beta_x: series and quadrature disagree", series,
                              q.value);
    return series;
}

}  // namespace gep
