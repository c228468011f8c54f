#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "gep/errors.hpp"

namespace gep {

// Parameter triple (lambda, beta, alpha) of the generalized
// exponential-Poisson distribution.  lambda is the Poisson compounding
// parameter, beta the rate (units 1/x), alpha the shape.  alpha = 1
// recovers the exponential-Poisson (EP) sub-model.
class GepParams {
  public:
    GepParams(double lambda, double beta, double alpha)
        : lambda_(lambda), beta_(beta), alpha_(alpha) {
        if (!(std::isfinite(lambda) && lambda > 0.0))
            throw ParameterError("GepParams: lambda must be positive and finite");
        if (!(std::isfinite(beta) && beta > 0.0))
            throw ParameterError("GepParams: beta must be positive and finite");
        if (!(std::isfinite(alpha) && alpha > 0.0))
            throw ParameterError("GepParams: alpha must be positive and finite");
    }

    double lambda() const { return lambda_; }
    double beta() const { return beta_; }
    double alpha() const { return alpha_; }

    bool operator==(const GepParams& o) const {
        return lambda_ == o.lambda_ && beta_ == o.beta_ && alpha_ == o.alpha_;
    }

  private:
    double lambda_;
    double beta_;
    double alpha_;
};

// An observed sample: strictly positive, finite values.
class Sample {
  public:
    explicit Sample(std::vector<double> values) : values_(std::move(values)) {
        if (values_.empty()) throw ArgumentError("Sample: must contain at least one value");
        for (double v : values_) {
            if (!(std::isfinite(v) && v > 0.0))
                throw ArgumentError("Sample: all values must be positive and finite");
        }
    }

    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double mean() const {
        double s = 0.0;
        for (double v : values_) s += v;
        return s / static_cast<double>(values_.size());
    }

  private:
    std::vector<double> values_;
};

}  // namespace gep
