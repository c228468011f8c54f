#pragma once

#include <array>

#include "gep/inference.hpp"
#include "gep/params.hpp"

namespace gep {

// Joint parameters of the two-population stress-strength model: X and Y
// share (lambda, beta) and carry their own shapes.
struct SsParams {
    double lambda, beta, alpha1, alpha2;
};

struct SsResult {
    double lambda = 0.0;
    double beta = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double r_hat = 0.0;  // alpha1 / (alpha1 + alpha2)
    double loglik = 0.0;
    bool converged = false;
    int iterations = 0;
    std::array<bool, 4> at_bound{};
};

// R = Pr(Y < X) = alpha1 / (alpha1 + alpha2) for populations sharing
// (lambda, beta).
double stress_strength_r(double alpha1, double alpha2);

// Joint log-likelihood of the two samples.
double ss_loglik(const SsParams& theta, const Sample& x_sample, const Sample& y_sample);

// Gradient (d/d lambda, d/d beta, d/d alpha1, d/d alpha2) of ss_loglik.
std::array<double, 4> ss_score(const SsParams& theta, const Sample& x_sample,
                               const Sample& y_sample);

// Joint maximum-likelihood fit with shared (lambda, beta); r_hat follows from
// the fitted shapes by invariance.
SsResult fit_ss(const Sample& x_sample, const Sample& y_sample, const FitConfig& config = {});

}  // namespace gep
