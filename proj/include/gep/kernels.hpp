#pragma once

#include <array>
#include <atomic>
#include <cstddef>
#include <span>
#include <vector>

#include "gep/params.hpp"

// Data-parallel kernels.  Each batch transform has a plain-loop serial
// reference (the _serial variant, kept for tests and the benchmark) and an
// OpenMP version.  Reductions use a fixed block decomposition with block
// partials combined in index order, so results are bit-identical for any
// thread count, including a serial build.

namespace gep::kernels {

inline constexpr std::size_t kBlock = 1024;

void pdf_batch(const GepParams& p, std::span<const double> x, std::span<double> out);
void cdf_batch(const GepParams& p, std::span<const double> x, std::span<double> out);
void hazard_batch(const GepParams& p, std::span<const double> x, std::span<double> out);
void quantile_batch(const GepParams& p, std::span<const double> q, std::span<double> out);
void log_pdf_batch(const GepParams& p, std::span<const double> x, std::span<double> out);

void pdf_batch_serial(const GepParams& p, std::span<const double> x, std::span<double> out);
void cdf_batch_serial(const GepParams& p, std::span<const double> x, std::span<double> out);
void hazard_batch_serial(const GepParams& p, std::span<const double> x, std::span<double> out);
void quantile_batch_serial(const GepParams& p, std::span<const double> q, std::span<double> out);
void log_pdf_batch_serial(const GepParams& p, std::span<const double> x, std::span<double> out);

// Blocked deterministic sum of f(0) + ... + f(n-1).
template <class F>
double reduce_sum(std::size_t n, F&& f) {
    if (n == 0) return 0.0;
    const std::size_t nb = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(nb, 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nb); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
        const std::size_t hi = std::min(lo + kBlock, n);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += f(i);
        partial[static_cast<std::size_t>(b)] = s;
    }
    double total = 0.0;
    for (double s : partial) total += s;
    return total;
}

// Plain left-to-right reference.
template <class F>
double reduce_sum_serial(std::size_t n, F&& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += f(i);
    return s;
}

// Blocked deterministic sum of K-vectors.
template <std::size_t K, class F>
std::array<double, K> reduce_sum_vec(std::size_t n, F&& f) {
    std::array<double, K> total{};
    if (n == 0) return total;
    const std::size_t nb = (n + kBlock - 1) / kBlock;
    std::vector<std::array<double, K>> partial(nb);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nb); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
        const std::size_t hi = std::min(lo + kBlock, n);
        std::array<double, K> s{};
        for (std::size_t i = lo; i < hi; ++i) {
            const std::array<double, K> t = f(i);
            for (std::size_t k = 0; k < K; ++k) s[k] += t[k];
        }
        partial[static_cast<std::size_t>(b)] = s;
    }
    for (const auto& s : partial)
        for (std::size_t k = 0; k < K; ++k) total[k] += s[k];
    return total;
}

}  // namespace gep::kernels
