#pragma once

#include <functional>

#include "gep/params.hpp"

namespace gep {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
};

// Adaptive Gauss-Kronrod 7-15 on the open interval (0, 1); endpoint
// singularities up to the integrable kind are handled by subdivision (nodes
// never touch the endpoints).
QuadResult integrate_unit(const std::function<double(double)>& f, double tol,
                          double rel_tol = 0.0);

// Integral over (0, inf) via the substitution x = t/(1-t).
QuadResult integrate_halfline(const std::function<double(double)>& f, double tol,
                              double rel_tol = 0.0);

// E[g(X)] for X ~ GEP(p), computed as the unit-interval integral of
// g(quantile(u)); the substitution carries uniform weight, so no tail
// truncation is involved.
QuadResult gep_expectation(const GepParams& p, const std::function<double(double)>& g,
                           double tol = 1e-9, double rel_tol = 0.0);

}  // namespace gep
