#pragma once

#include "gep/params.hpp"
#include "gep/series.hpp"

namespace gep {

// Order and truncation policy of a Renyi entropy request.
struct EntropyQuery {
    double gamma = 2.0;  // > 0, != 1
    SeriesControl control{};
};

// A_j(lambda, gamma) = sum_k {lambda(gamma+j)}^k / (k! (k+gamma)); positive
// terms, monotone partial sums.
double a_j_series(double lambda, double gamma, int j, const SeriesControl& control = {});

// Renyi entropy of order gamma.  The closed-form series and the quadrature
// of (1-gamma)^{-1} log integral f^gamma are both evaluated; the series value
// is returned only when the two agree to 1e-6 (ValidationError otherwise).
// Requires (alpha-1)*gamma + 1 > 0.
double renyi_entropy(const GepParams& p, const EntropyQuery& query);

struct ShannonResult {
    double value;             // quadrature of E[-log f(X)]; the authoritative value
    double series_value;      // closed-form series evaluated alongside
    double series_discrepancy;  // |value - series_value|
    bool series_validated;    // discrepancy <= 1e-6
};

// Shannon entropy E[-log f(X)] by quadrature, with the closed-form series
// reported in the diagnostics.
ShannonResult shannon_entropy(const GepParams& p, const SeriesControl& control = {});

// E(e^{-beta X}) = 1 - (alpha/lambda) sum_k (1-e^{-lambda})^k / (k(k+alpha)),
// validated against the quadrature oracle on every call (ValidationError on
// disagreement beyond 1e-6).
double mean_exp_neg_beta_x(const GepParams& p, const SeriesControl& control = {});

}  // namespace gep
