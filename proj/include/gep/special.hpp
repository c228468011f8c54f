#pragma once

#include <cstdint>
#include <random>

namespace gep {

// log(1 - e^w) for w <= 0, accurate for w near 0 and w very negative.
double log1mexp(double w);

// log(n!) via lgamma.
double log_factorial(int n);

// Binomial coefficient C(n, k); exact in double up to n = 20, log-space above.
double binomial(int n, int k);

// Signed coefficient (-1)^j Gamma(g)/(Gamma(g-j) j!) of the expansion of
// (1-z)^{g-1}.  Exactly zero for integer g and j >= g.
double expansion_coefficient(double gamma_val, int j);

// Regularized upper incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a).
double gamma_q(double a, double x);

// Regularized lower incomplete gamma P(a, x) = 1 - Q(a, x).
double gamma_p(double a, double x);

// Standard normal quantile, |error| < 1e-13 over (0, 1).
double inverse_normal_cdf(double p);

// Upper tail of chi-square with k degrees of freedom.
double chi2_sf(double w, int k);

// Deterministic uniform variates on [0, 1).  The engine is std::mt19937_64
// (bit-exact across implementations); the 53-bit mapping is fixed here
// rather than delegated to std::uniform_real_distribution, whose output is
// implementation-defined.
class UniformStream {
  public:
    explicit UniformStream(std::uint64_t seed) : engine_(seed) {}
    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  private:
    std::mt19937_64 engine_;
};

}  // namespace gep
