#pragma once

#include <functional>

namespace iwatsuka {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
};

// Adaptive Gauss-Kronrod 7/15 on [a, b]. Subdivides until the local error
// estimate satisfies err <= abs_tol + rel_tol * |whole estimate|.
// Throws accuracy_error if the tolerance is unreachable at max depth.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    double abs_tol, double rel_tol,
                                    int max_depth = 48);

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol = 1e-13);

}  // namespace iwatsuka
