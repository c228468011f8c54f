#pragma once

#include <cstdint>
#include <vector>

#include "gep/params.hpp"

namespace gep {

// Shape classification of the failure rate.
enum class HazardTag { Decreasing, Increasing, UpsideDownBathtub, Undetermined };

struct HazardShape {
    HazardTag tag;
    int grid_size;     // 0 when a theorem shortcut decided the shape
    int sign_changes;  // direction changes observed on the grid
};

// Log-space building blocks shared by pdf/cdf/survival/hazard.  For fixed
// params and x >= 0:
//   w     = -lambda + lambda e^{-beta x}        (in [-lambda, 0])
//   log_g = log(1 - e^w)                        (EP cdf numerator, logged)
//   log_d = log(1 - e^{-lambda})
// Everything is built from expm1/log1p so that lambda up to ~1e3 loses no
// precision.
struct LogCore {
    double w;
    double log_g;
    double log_d;
    double log_ep_cdf;  // log_g - log_d, in (-inf, 0]
};
LogCore log_core(const GepParams& p, double x);

double log_pdf(const GepParams& p, double x);
double pdf(const GepParams& p, double x);
double cdf(const GepParams& p, double x);
double survival(const GepParams& p, double x);

// f(x)/s(x).  Throws TailError when the survival underflows to zero.
double hazard(const GepParams& p, double x);

// Closed-form quantile; q in [0, 1).  q = 1 is rejected so inverse-transform
// sampling can feed u from [0, 1) directly.
double quantile(const GepParams& p, double q);

// n i.i.d. draws by inverse transform from a seeded deterministic stream.
std::vector<double> sample(const GepParams& p, std::size_t n, std::uint64_t seed);

// Sign of eta'(x) where eta = -f'/f (Glaser's criterion); -1 for all x when
// alpha <= 1, +1 for all x when alpha > e^lambda.
int eta_prime_sign(const GepParams& p, double x);

// Theorem shortcuts first; otherwise hazard is scanned on a log-spaced grid
// spanning quantiles 0.001..0.999 and classified by its direction changes.
HazardShape classify_hazard_shape(const GepParams& p, int grid_size);

}  // namespace gep
