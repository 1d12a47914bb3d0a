#pragma once

#include <functional>

namespace gauge_rabi::quadrature {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
};

// Adaptive Simpson on [a, b] to absolute tolerance `tol`. Reversed limits
// give the negated integral.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double tol = 1e-12, int max_depth = 50);

}  // namespace gauge_rabi::quadrature
