#include "gep/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gep/core.hpp"

namespace gep {

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (positive half; symmetric).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
    double a, b;
    double value;
    double error;
};

// One GK 7-15 rule application on [a, b].
Interval gk15(const std::function<double(double)>& f, double a, double b, int& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    evals += 15;
    double gauss = kWg[3] * fc;
    double kron = kWgk[7] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        const double fsum = f(c - dx) + f(c + dx);
        kron += kWgk[i] * fsum;
        if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
    }
    return {a, b, kron * h, std::fabs((kron - gauss) * h)};
}

QuadResult adapt(const std::function<double(double)>& f, double a0, double b0, double tol_abs,
                 double tol_rel) {
    constexpr int kMaxIntervals = 8000;
    constexpr double kMinWidth = 1e-17;
    int evals = 0;
    std::vector<Interval> iv;
    iv.reserve(256);
    iv.push_back(gk15(f, a0, b0, evals));
    double total_err = iv[0].error;
    double total_val = iv[0].value;
    const auto target = [&] { return std::max(tol_abs, tol_rel * std::fabs(total_val)); };
    while (total_err > target() && static_cast<int>(iv.size()) < kMaxIntervals) {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < iv.size(); ++i)
            if (iv[i].error > iv[worst].error) worst = i;
        const Interval w = iv[worst];
        if (w.b - w.a < kMinWidth) break;  // cannot refine further
        const double mid = 0.5 * (w.a + w.b);
        const Interval left = gk15(f, w.a, mid, evals);
        const Interval right = gk15(f, mid, w.b, evals);
        total_err += left.error + right.error - w.error;
        total_val += left.value + right.value - w.value;
        iv[worst] = left;
        iv.push_back(right);
    }
    // Accumulate smallest-first to limit rounding in long lists.
    std::sort(iv.begin(), iv.end(),
              [](const Interval& x, const Interval& y) { return std::fabs(x.value) < std::fabs(y.value); });
    double value = 0.0;
    double err = 0.0;
    for (const Interval& s : iv) {
        value += s.value;
        err += s.error;
    }
    if (!(err <= std::max(tol_abs, tol_rel * std::fabs(value))))
        throw QuadratureError("adaptive quadrature failed to reach tolerance", value, err);
    return {value, err, evals};
}

}  // namespace

QuadResult integrate_unit(const std::function<double(double)>& f, double tol,
                          double rel_tol) {
    if (!(tol > 0.0)) throw ArgumentError("integrate_unit: tol must be positive");
    return adapt(f, 0.0, 1.0, tol, rel_tol);
}

QuadResult integrate_halfline(const std::function<double(double)>& f, double tol,
                              double rel_tol) {
    if (!(tol > 0.0)) throw ArgumentError("integrate_halfline: tol must be positive");
    return adapt(
        [&f](double t) {
            const double om = 1.0 - t;
            return f(t / om) / (om * om);
        },
        0.0, 1.0, tol, rel_tol);
}

QuadResult gep_expectation(const GepParams& p, const std::function<double(double)>& g,
                           double tol, double rel_tol) {
    return integrate_unit(
        [&](double u) {
            const double v = g(quantile(p, u));
            if (std::isnan(v))
                throw ArgumentError("gep_expectation: integrand returned NaN at u=" +
                                    std::to_string(u));
            return v;
        },
        tol, rel_tol);
}

}  // namespace gep
