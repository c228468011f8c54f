#include "optim.hpp"

#include <algorithm>
#include <cmath>

namespace gep::detail {

namespace {

void project(std::vector<double>& x, const std::vector<double>& lo, const std::vector<double>& hi) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
}

// Gradient components pointing out of the box at an active bound are inactive.
double projected_grad_norm(const std::vector<double>& x, const std::vector<double>& g,
                           const std::vector<double>& lo, const std::vector<double>& hi) {
    double nrm = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= lo[i] && g[i] > 0.0) continue;
        if (x[i] >= hi[i] && g[i] < 0.0) continue;
        nrm = std::max(nrm, std::fabs(g[i]));
    }
    return nrm;
}

}  // namespace

OptimResult bfgs_box(
    const std::function<double(const std::vector<double>&, std::vector<double>&)>& eval,
    std::vector<double> x0, const std::vector<double>& lo, const std::vector<double>& hi,
    int max_iterations, double grad_tol) {
    const std::size_t d = x0.size();
    project(x0, lo, hi);

    OptimResult r;
    r.x = x0;
    r.grad.assign(d, 0.0);
    r.f = eval(r.x, r.grad);

    // Inverse Hessian approximation, row-major identity.
    std::vector<double> h(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) h[i * d + i] = 1.0;

    std::vector<double> p(d), xn(d), gn(d), s(d), y(d), hy(d);
    int stall_count = 0;
    for (int it = 0; it < max_iterations; ++it) {
        r.iterations = it;
        r.proj_grad_norm = projected_grad_norm(r.x, r.grad, lo, hi);
        if (r.proj_grad_norm <= grad_tol) {
            r.converged = true;
            return r;
        }

        for (std::size_t i = 0; i < d; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < d; ++j) acc -= h[i * d + j] * r.grad[j];
            p[i] = acc;
        }
        double dir_deriv = 0.0;
        for (std::size_t i = 0; i < d; ++i) dir_deriv += p[i] * r.grad[i];
        if (!(dir_deriv < 0.0)) {  // not a descent direction: reset curvature
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) h[i * d + j] = (i == j) ? 1.0 : 0.0;
            for (std::size_t i = 0; i < d; ++i) p[i] = -r.grad[i];
            dir_deriv = 0.0;
            for (std::size_t i = 0; i < d; ++i) dir_deriv += p[i] * r.grad[i];
            if (!(dir_deriv < 0.0)) return r;  // zero gradient inside tolerance path
        }

        double step = 1.0;
        double fn = r.f;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            for (std::size_t i = 0; i < d; ++i) xn[i] = r.x[i] + step * p[i];
            project(xn, lo, hi);
            fn = eval(xn, gn);
            if (std::isfinite(fn) && fn <= r.f + 1e-4 * step * dir_deriv) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            r.stalled = true;
            return r;
        }

        double sy = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            s[i] = xn[i] - r.x[i];
            y[i] = gn[i] - r.grad[i];
            sy += s[i] * y[i];
        }
        const double df = r.f - fn;
        r.x = xn;
        r.f = fn;
        r.grad = gn;

        if (df <= 1e-12 * (std::fabs(fn) + 1.0)) {
            if (++stall_count >= 2) {
                r.proj_grad_norm = projected_grad_norm(r.x, r.grad, lo, hi);
                r.converged = r.proj_grad_norm <= grad_tol;
                r.stalled = !r.converged;
                return r;
            }
        } else {
            stall_count = 0;
        }

        // BFGS inverse update; skip when curvature information is unusable
        // (projection can produce tiny or negative s'y).
        double ss = 0.0, yy = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            ss += s[i] * s[i];
            yy += y[i] * y[i];
        }
        if (sy > 1e-10 * std::sqrt(ss * yy)) {
            const double rho = 1.0 / sy;
            double yhy = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                double acc = 0.0;
                for (std::size_t j = 0; j < d; ++j) acc += h[i * d + j] * y[j];
                hy[i] = acc;
            }
            for (std::size_t i = 0; i < d; ++i) yhy += y[i] * hy[i];
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < d; ++j) {
                    h[i * d + j] += (1.0 + rho * yhy) * rho * s[i] * s[j] -
                                    rho * (s[i] * hy[j] + hy[i] * s[j]);
                }
            }
        }
    }
    r.proj_grad_norm = projected_grad_norm(r.x, r.grad, lo, hi);
    r.converged = r.proj_grad_norm <= grad_tol;
    return r;
}

}  // namespace gep::detail
