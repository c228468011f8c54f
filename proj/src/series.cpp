#include "gep/series.hpp"

#include <cmath>
#include <limits>

#include "gep/core.hpp"

namespace gep {

namespace {

// Neumaier-compensated accumulator for alternating sums.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double t) {
        const double s = sum + t;
        if (std::fabs(sum) >= std::fabs(t))
            comp += (sum - s) + t;
        else
            comp += (t - s) + sum;
        sum = s;
    }
    double value() const { return sum + comp; }
};

bool small_enough(double term, double sum, const SeriesControl& c) {
    return std::fabs(term) <= c.rel_tol * std::fabs(sum) + c.abs_tol;
}

}  // namespace

double barnes_f(const HypergeomArgs& args, const SeriesControl& control) {
    if (!(args.argument >= 0.0))
        throw ArgumentError("barnes_f: argument must be nonnegative");
    for (double d : args.denominator_params)
        if (d == 0.0 || (d < 0.0 && d == std::floor(d)))
            throw ArgumentError("barnes_f: denominator parameter is a nonpositive integer");
    double term = 1.0;
    double sum = 1.0;
    int consecutive_small = 0;
    for (int k = 0; k < control.max_terms; ++k) {
        double ratio = args.argument / (k + 1.0);
        for (double n : args.numerator_params) ratio *= n + k;
        for (double d : args.denominator_params) ratio /= d + k;
        term *= ratio;
        sum += term;
        if (small_enough(term, sum, control)) {
            if (++consecutive_small >= 2) return sum;
        } else {
            consecutive_small = 0;
        }
    }
    throw SeriesError("barnes_f: series did not converge within max_terms", sum, term);
}

double scaled_moment_hypergeom(double x, int r, const SeriesControl& control) {
    if (!(x >= 0.0)) throw ArgumentError("scaled_moment_hypergeom: x must be nonnegative");
    if (r < 0) throw ArgumentError("scaled_moment_hypergeom: r must be nonnegative");
    if (x == 0.0) return 1.0;
    // term_k = e^{-x} x^k / (k! (k+1)^{r+1}); start at the Poisson mode and
    // walk outward so no intermediate quantity under- or overflows.
    const int k0 = static_cast<int>(x);
    const double log_t0 = -x + k0 * std::log(x) - log_factorial(k0);
    const double t0 = std::exp(log_t0);
    const double p1 = static_cast<double>(r) + 1.0;
    double sum = t0 * std::pow(k0 + 1.0, -p1);
    double tk = t0;
    int consecutive_small = 0;
    for (int k = k0 + 1;; ++k) {
        tk *= x / k;
        const double term = tk * std::pow(k + 1.0, -p1);
        sum += term;
        if (small_enough(term, sum, control)) {
            if (++consecutive_small >= 2) break;
        } else {
            consecutive_small = 0;
        }
        if (k >= k0 + control.max_terms)
            throw SeriesError("scaled_moment_hypergeom: upward pass did not converge", sum, term);
    }
    tk = t0;
    for (int k = k0 - 1; k >= 0; --k) {
        tk *= (k + 1.0) / x;
        const double term = tk * std::pow(k + 1.0, -p1);
        sum += term;
        if (small_enough(term, sum, control)) break;
    }
    return sum;
}

double ep_raw_moment(double lambda, double beta, int r, const SeriesControl& control) {
    if (!(lambda > 0.0) || !(beta > 0.0))
        throw ParameterError("ep_raw_moment: lambda and beta must be positive");
    if (r < 1) throw ArgumentError("ep_raw_moment: r must be >= 1");
    // r! lambda / ((e^lambda - 1) beta^r) F = r! lambda e^{-lambda} F / (D beta^r)
    const double d = -std::expm1(-lambda);
    return std::exp(log_factorial(r)) * lambda * scaled_moment_hypergeom(lambda, r, control) /
           (d * std::pow(beta, r));
}

namespace {

// Two-level Richardson extrapolation from partial sums at J/4, J/2 and J of
// a series whose tail behaves like C J^{-p}.
double richardson_tail(double s_quarter, double s_half, double s_full, double p) {
    const double f1 = std::pow(2.0, p) - 1.0;
    const double r1a = s_half + (s_half - s_quarter) / f1;
    const double r1b = s_full + (s_full - s_half) / f1;
    return r1b + (r1b - r1a) / (std::pow(2.0, p + 1.0) - 1.0);
}

// Shape-expansion engine behind the GEP moments: for arbitrary shape g,
//   E(X^r) = r! g lambda / (D^g beta^r) sum_j c_j(g) e^{-lambda(j+1)} F_j,
// with c_j the coefficients of (1-z)^{g-1}.  The j-sum is finite for
// integer g (the coefficient recurrence reaches an exact zero) and
// compensated-summed otherwise.  For small non-integer shapes the tail
// decays like j^{-(shape+r+1)}, too slowly for direct summation; the known
// exponent then gives a Richardson estimate from the partial sums.
double gep_moment_shape(double lambda, double beta, double shape, int r,
                        const SeriesControl& control) {
    const double log_d = log1mexp(-lambda);
    const double log_pref = log_factorial(r) + std::log(shape) + std::log(lambda) -
                            shape * log_d - r * std::log(beta);
    CompensatedSum acc;
    double coef = 1.0;
    double s_quarter = 0.0, s_half = 0.0;
    double last_term = 0.0;
    int consecutive_small = 0;
    const int cap = control.max_terms;
    for (int j = 0; j < cap; ++j) {
        last_term = coef * scaled_moment_hypergeom(lambda * (j + 1.0), r, control);
        acc.add(last_term);
        if (j == cap / 4 - 1) s_quarter = acc.value();
        if (j == cap / 2 - 1) s_half = acc.value();
        if (small_enough(last_term, acc.value(), control)) {
            if (++consecutive_small >= 2) return std::exp(log_pref) * acc.value();
        } else {
            consecutive_small = 0;
        }
        coef *= -(shape - 1.0 - j) / (j + 1.0);
        if (coef == 0.0) return std::exp(log_pref) * acc.value();  // integer shape: exact stop
    }
    // The extrapolation needs the asymptotic regime: partial-sum differences
    // must already be shrinking.
    const double s_full = acc.value();
    if (std::fabs(s_full - s_half) < std::fabs(s_half - s_quarter)) {
        return std::exp(log_pref) *
               richardson_tail(s_quarter, s_half, s_full, shape + static_cast<double>(r));
    }
    throw SeriesError("gep_raw_moment: shape expansion did not converge within max_terms",
                      std::exp(log_pref) * s_full, last_term);
}

}  // namespace

double gep_raw_moment(const GepParams& p, int r, const SeriesControl& control) {
    if (r < 1) throw ArgumentError("gep_raw_moment: r must be >= 1");
    return gep_moment_shape(p.lambda(), p.beta(), p.alpha(), r, control);
}

double pdf_as_ep_mixture(const GepParams& p, double x, const SeriesControl& control) {
    if (!(x >= 0.0)) throw ArgumentError("pdf_as_ep_mixture: x must be nonnegative");
    // f = alpha / D^alpha sum_j c_j (1-e^{-lambda(j+1)}) f_EP(x; lambda(j+1), beta) / (j+1)
    const double lambda = p.lambda();
    const double log_d = log1mexp(-lambda);
    const double pref = p.alpha() * std::exp(-p.alpha() * log_d);
    CompensatedSum acc;
    double coef = 1.0;
    int consecutive_small = 0;
    for (int j = 0; j < control.max_terms; ++j) {
        const double lam_j = lambda * (j + 1.0);
        const double log_dj = log1mexp(-lam_j);
        // log f_EP(x; lam_j, beta)
        const double w = lam_j * std::expm1(-p.beta() * x);
        const double log_fep =
            std::log(lam_j * p.beta()) + w - p.beta() * x - log_dj;
        const double term = coef * std::exp(log_dj + log_fep) / (j + 1.0);
        acc.add(term);
        if (small_enough(term, acc.value(), control)) {
            if (++consecutive_small >= 2) return pref * acc.value();
        } else {
            consecutive_small = 0;
        }
        coef *= -(p.alpha() - 1.0 - j) / (j + 1.0);
        if (coef == 0.0) return pref * acc.value();
    }
    throw SeriesError("pdf_as_ep_mixture: series did not converge within max_terms",
                      pref * acc.value(), coef);
}

namespace {

void check_order_args(int i, int n) {
    if (n < 1 || i < 1 || i > n)
        throw ArgumentError("order statistic: need 1 <= i <= n");
}

// n! / ((i-1)! (n-i)!) C(n-i, k) / (i+k), in log space above 20!.
double order_coefficient(int i, int n, int k) {
    if (n <= 20)
        return std::exp(log_factorial(n) - log_factorial(i - 1) - log_factorial(n - i)) *
               binomial(n - i, k) / (i + k);
    return std::exp(log_factorial(n) - log_factorial(i - 1) - log_factorial(n - i - k) -
                    log_factorial(k) - std::log(static_cast<double>(i + k)));
}

}  // namespace

double order_stat_pdf(const GepParams& p, int i, int n, double x) {
    check_order_args(i, n);
    if (!(x >= 0.0)) throw ArgumentError("order_stat_pdf: x must be nonnegative");
    CompensatedSum acc;
    for (int k = 0; k <= n - i; ++k) {
        const GepParams pk(p.lambda(), p.beta(), p.alpha() * (i + k));
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        acc.add(sign * order_coefficient(i, n, k) * pdf(pk, x));
    }
    return acc.value();
}

double order_stat_raw_moment(const GepParams& p, int i, int n, int r,
                             const SeriesControl& control) {
    check_order_args(i, n);
    if (r < 1) throw ArgumentError("order_stat_raw_moment: r must be >= 1");
    CompensatedSum acc;
    for (int k = 0; k <= n - i; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        acc.add(sign * order_coefficient(i, n, k) *
                gep_moment_shape(p.lambda(), p.beta(), p.alpha() * (i + k), r, control));
    }
    return acc.value();
}

}  // namespace gep
