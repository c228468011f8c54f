#include "gep/kernels.hpp"

#include <cmath>
#include <exception>
#include <limits>

#include "gep/core.hpp"

namespace gep::kernels {

namespace {

void check_sizes(std::span<const double> in, std::span<double> out) {
    if (in.size() != out.size()) throw ArgumentError("kernel: input/output size mismatch");
}

// Runs op(i) over the range in parallel; element-level exceptions are rare
// (tail underflow), so on failure the range is re-run serially to surface
// the original exception.
template <class Op>
void for_each_parallel(std::size_t n, Op&& op) {
    std::atomic<bool> failed{false};
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
            op(static_cast<std::size_t>(i));
        } catch (...) {
            failed.store(true, std::memory_order_relaxed);
        }
    }
    if (failed) {
        for (std::size_t i = 0; i < n; ++i) op(i);  // rethrows
    }
}

}  // namespace

void pdf_batch(const GepParams& p, std::span<const double> x, std::span<double> out) {
    check_sizes(x, out);
    for_each_parallel(x.size(), [&](std::size_t i) { out[i] = pdf(p, x[i]); });
}

void cdf_batch(const GepParams& p, std::span<const double> x, std::span<double> out) {
    check_sizes(x, out);
    for_each_parallel(x.size(), [&](std::size_t i) { out[i] = cdf(p, x[i]); });
}

void hazard_batch(const GepParams& p, std::span<const double> x, std::span<double> out) {
    check_sizes(x, out);
    for_each_parallel(x.size(), [&](std::size_t i) { out[i] = hazard(p, x[i]); });
}

void quantile_batch(const GepParams& p, std::span<const double> q, std::span<double> out) {
    check_sizes(q, out);
    for_each_parallel(q.size(), [&](std::size_t i) { out[i] = quantile(p, q[i]); });
}

void log_pdf_batch(const GepParams& p, std::span<const double> x, std::span<double> out) {
    check_sizes(x, out);
    for_each_parallel(x.size(), [&](std::size_t i) { out[i] = log_pdf(p, x[i]); });
}

void pdf_batch_serial(const GepParams& p, std::span<const double> x, std::span<double> out) {
    check_sizes(x, out);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = pdf(p, x[i]);
}

void cdf_batch_serial(const GepParams& p, std::span<const double> x, std::span<double> out) {
    check_sizes(x, out);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = cdf(p, x[i]);
}

void hazard_batch_serial(const GepParams& p, std::span<const double> x, std::span<double> out) {
    check_sizes(x, out);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = hazard(p, x[i]);
}

void quantile_batch_serial(const GepParams& p, std::span<const double> q, std::span<double> out) {
    check_sizes(q, out);
    for (std::size_t i = 0; i < q.size(); ++i) out[i] = quantile(p, q[i]);
}

void log_pdf_batch_serial(const GepParams& p, std::span<const double> x, std::span<double> out) {
    check_sizes(x, out);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = log_pdf(p, x[i]);
}

}  // namespace gep::kernels
