#pragma once

#include <functional>
#include <vector>

namespace gep::detail {

struct OptimResult {
    std::vector<double> x;
    double f = 0.0;
    std::vector<double> grad;
    double proj_grad_norm = 0.0;
    bool converged = false;   // projected-gradient criterion met
    bool stalled = false;     // stopped on vanishing objective change
    int iterations = 0;
};

// Minimizes f over a box by BFGS with backtracking Armijo line search;
// iterates are projected onto [lo, hi] componentwise.  `eval` returns the
// objective and fills the gradient.
OptimResult bfgs_box(const std::function<double(const std::vector<double>&, std::vector<double>&)>& eval,
                     std::vector<double> x0, const std::vector<double>& lo,
                     const std::vector<double>& hi, int max_iterations, double grad_tol);

}  // namespace gep::detail
