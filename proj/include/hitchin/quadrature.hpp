#pragma once

#include <functional>

namespace hitchin {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
    bool converged = true;
};

/// Globally adaptive Gauss-Kronrod 7(15) quadrature on [a, b].
/// Bisects the interval with the largest error estimate until the summed
/// estimate meets abs_tol + rel_tol * |integral|, or max_intervals is hit.
QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-12, double rel_tol = 1e-10,
                        int max_intervals = 2000);

/// Integral over the whole real plane of f(x, y), as iterated adaptive
/// quadrature after the compactifying substitution x = tan u, y = tan v.
/// Suitable for smooth absolutely integrable integrands (decay faster than
/// 1/r^2). Tolerances apply per 1-D pass.
QuadResult integrate_plane(const std::function<double(double, double)>& f,
                           double abs_tol = 1e-10, double rel_tol = 1e-8);

}  // namespace hitchin
