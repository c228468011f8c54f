#include "gep/special.hpp"

#include <cmath>
#include <limits>

#include "gep/errors.hpp"

namespace gep {

double log1mexp(double w) {
    // 1 - e^w with w <= 0; switch between log(-expm1(w)) and log1p(-exp(w))
    // at w = -log 2 (Maechler's rule).
    if (w > 0.0) throw ArgumentError("log1mexp: argument must be <= 0");
    if (w == 0.0) return -std::numeric_limits<double>::infinity();
    if (w > -0.6931471805599453) return std::log(-std::expm1(w));
    return std::log1p(-std::exp(w));
}

double log_factorial(int n) {
    if (n < 0) throw ArgumentError("log_factorial: negative argument");
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (n <= 20) {
        double v = 1.0;
        for (int i = 1; i <= k; ++i) v = v * static_cast<double>(n - k + i) / i;
        return std::round(v);
    }
    return std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k));
}

namespace {

// Sign of Gamma(t) for non-integer t (positive t -> +1; on (-k-1, -k) the
// sign alternates starting with -1 on (-1, 0)).
double gamma_sign(double t) {
    if (t > 0.0) return 1.0;
    const int k = static_cast<int>(std::floor(-t));
    return (k % 2 == 0) ? -1.0 : 1.0;
}

bool is_nonneg_integer(double x) {
    return x >= 0.0 && x == std::floor(x);
}

}  // namespace

double expansion_coefficient(double gamma_val, int j) {
    if (!(gamma_val > 0.0)) throw ArgumentError("expansion_coefficient: gamma must be positive");
    if (j < 0) throw ArgumentError("expansion_coefficient: negative index");
    if (j == 0) return 1.0;
    const double gmj = gamma_val - j;
    if (is_nonneg_integer(gamma_val)) {
        if (j >= static_cast<int>(gamma_val)) return 0.0;  // series truncates exactly
        return std::exp(std::lgamma(gamma_val) - std::lgamma(gmj) - log_factorial(j)) *
               ((j % 2 == 0) ? 1.0 : -1.0);
    }
    // lgamma of a negative non-integer returns log|Gamma|; reinstate the sign.
    const double mag = std::exp(std::lgamma(gamma_val) - std::lgamma(gmj) - log_factorial(j));
    const double sign = ((j % 2 == 0) ? 1.0 : -1.0) * gamma_sign(gmj);
    return sign * mag;
}

namespace {

// Lower incomplete gamma by power series, x < a + 1.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 10000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper incomplete gamma by modified Lentz continued fraction, x >= a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw ArgumentError("gamma_p: need a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw ArgumentError("gamma_q: need a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi2_sf(double w, int k) {
    if (w < 0.0) throw ArgumentError("chi2_sf: statistic must be nonnegative");
    if (k < 1) throw ArgumentError("chi2_sf: degrees of freedom must be positive");
    return gamma_q(0.5 * k, 0.5 * w);
}

double inverse_normal_cdf(double p) {
    // Wichura's AS 241 (PPND16).
    if (!(p > 0.0 && p < 1.0)) throw ArgumentError("inverse_normal_cdf: p must lie in (0,1)");
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                   1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                 1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                   5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                 4.2313330701600911252e1) * r + 1.0);
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                    2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                  3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
                4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
              (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                    1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                  6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
                2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                    1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                  2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
                5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
              (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                    1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                  1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                5.99832206555887937690e-1) * r + 1.0);
    }
    return (q < 0.0) ? -val : val;
}

}  // namespace gep
