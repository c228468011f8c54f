// Timing comparison of the serial reference kernels against the OpenMP
// versions: batch evaluation, inverse-transform sampling, and the blocked
// log-likelihood/score reductions.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gep/core.hpp"
#include "gep/inference.hpp"
#include "gep/kernels.hpp"
#include "gep/special.hpp"

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

template <class F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const double t0 = now_seconds();
        f();
        best = std::min(best, now_seconds() - t0);
    }
    return best;
}

void report(const char* name, std::size_t n, double serial_s, double parallel_s,
            double max_abs_diff) {
    std::printf("%-18s n=%-9zu serial %8.2f ms   parallel %8.2f ms   speedup %5.2fx   max|diff| %.3g\n",
                name, n, serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s, max_abs_diff);
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t n = 1 << 22;
    int reps = 3;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--n" && i + 1 < argc) n = std::stoull(argv[++i]);
        else if (arg == "--reps" && i + 1 < argc) reps = std::stoi(argv[++i]);
        else {
            std::printf("usage: gep_bench [--n <count>] [--reps <count>]\n");
            return 2;
        }
    }
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled (serial build)\n");
#endif

    const gep::GepParams p(1.5, 0.8, 2.5);
    gep::UniformStream stream(12345);
    std::vector<double> u(n), xs(n), out_serial(n), out_parallel(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = stream.next();
    gep::kernels::quantile_batch(p, u, xs);

    {
        const double ts = time_best_of(reps, [&] { gep::kernels::pdf_batch_serial(p, xs, out_serial); });
        const double tp = time_best_of(reps, [&] { gep::kernels::pdf_batch(p, xs, out_parallel); });
        report("pdf_batch", n, ts, tp, max_diff(out_serial, out_parallel));
    }
    {
        const double ts = time_best_of(reps, [&] { gep::kernels::quantile_batch_serial(p, u, out_serial); });
        const double tp = time_best_of(reps, [&] { gep::kernels::quantile_batch(p, u, out_parallel); });
        report("quantile_batch", n, ts, tp, max_diff(out_serial, out_parallel));
    }
    {
        const double ts = time_best_of(reps, [&] { gep::kernels::hazard_batch_serial(p, xs, out_serial); });
        const double tp = time_best_of(reps, [&] { gep::kernels::hazard_batch(p, xs, out_parallel); });
        report("hazard_batch", n, ts, tp, max_diff(out_serial, out_parallel));
    }
    {
        double vs = 0.0, vp = 0.0;
        const double ts = time_best_of(reps, [&] {
            vs = gep::kernels::reduce_sum_serial(n, [&](std::size_t i) { return gep::log_pdf(p, xs[i]); });
        });
        const double tp = time_best_of(reps, [&] {
            vp = gep::kernels::reduce_sum(n, [&](std::size_t i) { return gep::log_pdf(p, xs[i]); });
        });
        report("loglik_reduce", n, ts, tp, std::fabs(vs - vp));
    }
    {
        const gep::Sample sample(xs);
        std::array<double, 3> sc{};
        const double tp = time_best_of(reps, [&] { sc = gep::score(p, sample); });
        std::printf("%-18s n=%-9zu parallel %8.2f ms   (score = %.6g, %.6g, %.6g)\n",
                    "score_reduce", n, tp * 1e3, sc[0], sc[1], sc[2]);
    }
    return 0;
}
