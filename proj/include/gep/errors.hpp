#pragma once

#include <stdexcept>
#include <string>

namespace gep {

// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid distribution parameters (lambda, beta, alpha must be positive finite).
class ParameterError : public Error {
  public:
    explicit ParameterError(const std::string& msg) : Error(msg) {}
};

// Invalid function argument (x < 0, q outside [0,1), bad index, ...).
class ArgumentError : public Error {
  public:
    explicit ArgumentError(const std::string& msg) : Error(msg) {}
};

// Survival (or the quantile's inner logarithm) underflowed in the far tail.
class TailError : public Error {
  public:
    TailError(const std::string& msg, double where) : Error(msg), where_(where) {}
    double where() const { return where_; }

  private:
    double where_;
};

// An infinite series failed to converge within SeriesControl::max_terms.
class SeriesError : public Error {
  public:
    SeriesError(const std::string& msg, double partial_sum, double last_term)
        : Error(msg), partial_sum_(partial_sum), last_term_(last_term) {}
    double partial_sum() const { return partial_sum_; }
    double last_term() const { return last_term_; }

  private:
    double partial_sum_;
    double last_term_;
};

// Adaptive quadrature could not reach the requested tolerance.
class QuadratureError : public Error {
  public:
    QuadratureError(const std::string& msg, double best_estimate, double error_estimate)
        : Error(msg), best_estimate_(best_estimate), error_estimate_(error_estimate) {}
    double best_estimate() const { return best_estimate_; }
    double error_estimate() const { return error_estimate_; }

  private:
    double best_estimate_;
    double error_estimate_;
};

// A series value disagreed with its independent oracle beyond tolerance.
class ValidationError : public Error {
  public:
    ValidationError(const std::string& msg, double series_value, double oracle_value)
        : Error(msg), series_value_(series_value), oracle_value_(oracle_value) {}
    double series_value() const { return series_value_; }
    double oracle_value() const { return oracle_value_; }

  private:
    double series_value_;
    double oracle_value_;
};

// Numerical optimization failed to converge from any start.
class OptimizationError : public Error {
  public:
    explicit OptimizationError(const std::string& msg) : Error(msg) {}
};

// Data file could not be parsed.
class DataError : public Error {
  public:
    explicit DataError(const std::string& msg) : Error(msg) {}
};

}  // namespace gep
