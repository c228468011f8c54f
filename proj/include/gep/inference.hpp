#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "gep/params.hpp"
#include "gep/special.hpp"

namespace gep {

using Matrix3 = std::array<std::array<double, 3>, 3>;

struct FitConfig {
    int max_iterations = 500;
    double gradient_tolerance = 1e-8;  // max-norm of the log-space gradient
    int multistart_points = 8;         // jittered starts beyond the fixed lattice
    std::uint64_t seed = 0;
    // Fitted parameters are constrained to [1/param_bound, param_bound]; the
    // likelihood can increase without bound toward the degenerate exponential
    // submodels (lambda -> 0 or lambda -> inf with lambda*beta fixed), where
    // the parameters stop being identifiable.  A fit that ends pinned to this
    // box is reported with at_bound set.
    double param_bound = 1e6;
};

struct ConfInterval {
    double lower = 0.0;
    double upper = 0.0;
    bool available = false;
};

struct FitResult {
    GepParams params{1.0, 1.0, 1.0};
    double loglik = 0.0;
    bool converged = false;
    int iterations = 0;
    Matrix3 covariance{};                       // inverse Fisher information at the fit
    std::array<ConfInterval, 3> intervals{};    // at the 0.95 level
    bool alpha_fixed = false;                   // true for the EP sub-model fit
    std::array<bool, 3> at_bound{};             // parameter pinned to the search box
    double grad_max_norm = 0.0;                 // log-space projected gradient at the fit
    bool small_sample = false;                  // n < 4
};

struct LrResult {
    double statistic = 0.0;
    int df = 1;
    double p_value = 1.0;
};

// Total log-likelihood of the sample.
double total_loglik(const GepParams& p, const Sample& sample);

// Analytic gradient (d/d lambda, d/d beta, d/d alpha) of total_loglik.
std::array<double, 3> score(const GepParams& p, const Sample& sample);

// Maximum-likelihood fit of the three-parameter model by multistart BFGS in
// (log lambda, log beta, log alpha).
FitResult fit_gep(const Sample& sample, const FitConfig& config = {});

// Fit of the EP sub-model (alpha fixed at 1).
FitResult fit_ep(const Sample& sample, const FitConfig& config = {});

// Expected (Fisher) information K_n = n * K_1, with the per-observation
// expectations evaluated by quadrature.  Valid for every alpha > 0.
Matrix3 fisher_info(const GepParams& p, int n);

// Wald intervals theta_i -+ z_{1-(1-level)/2} sqrt(cov_ii).
std::array<ConfInterval, 3> confidence_intervals(const FitResult& fit, double level);

// Likelihood-ratio test of alpha = 1 (EP) against alpha != 1 (GEP).
LrResult lr_test(const Sample& sample, const FitConfig& config = {});

}  // namespace gep
