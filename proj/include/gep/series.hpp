#pragma once

#include <vector>

#include "gep/params.hpp"
#include "gep/special.hpp"

namespace gep {

// Truncation policy shared by every infinite series in the library.  A sum
// stops once two consecutive terms satisfy |term| <= rel_tol*|sum| + abs_tol;
// hitting max_terms first raises SeriesError.
struct SeriesControl {
    double rel_tol = 1e-12;
    double abs_tol = 1e-300;
    int max_terms = 10000;
};

// Arguments of the Barnes extended hypergeometric function F_{p,q}(n, d; x).
struct HypergeomArgs {
    std::vector<double> numerator_params;
    std::vector<double> denominator_params;
    double argument = 0.0;
};

// F_{p,q}(n, d; x) = sum_k x^k prod_i (n_i)_k / (k! prod_i (d_i)_k) by
// multiplicative term recurrence; all terms are positive for x >= 0.
double barnes_f(const HypergeomArgs& args, const SeriesControl& control = {});

// e^{-x} F_{r+1,r+1}([1,..,1],[2,..,2]; x), summed outward from the largest
// (Poisson-weighted) term so arguments far beyond 700 stay in range.
double scaled_moment_hypergeom(double x, int r, const SeriesControl& control = {});

// r-th raw moment of the EP(lambda, beta) distribution.
double ep_raw_moment(double lambda, double beta, int r, const SeriesControl& control = {});

// r-th raw moment of GEP(lambda, beta, alpha); the shape expansion stops at
// alpha-1 exactly for integer alpha and is compensated-summed otherwise.
double gep_raw_moment(const GepParams& p, int r, const SeriesControl& control = {});

// GEP density expressed as a signed mixture of EP densities with compounding
// parameters lambda(j+1); serves as an independent route to pdf().
double pdf_as_ep_mixture(const GepParams& p, double x, const SeriesControl& control = {});

// Density of the i-th order statistic of a sample of n, as the finite
// alternating combination of GEP densities with shapes alpha(i+k).
double order_stat_pdf(const GepParams& p, int i, int n, double x);

// r-th raw moment of the i-th order statistic.
double order_stat_raw_moment(const GepParams& p, int i, int n, int r,
                             const SeriesControl& control = {});

}  // namespace gep
