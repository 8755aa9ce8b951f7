#pragma once

#include <functional>

namespace rangerenew {

struct QuadResult {
    double value = 0.0;
    double est_error = 0.0;
    int evaluations = 0;
};

// Adaptive Gauss-Kronrod 7-15 with bisection; est_error accumulates the
// |K15 - G7| differences of accepted panels. Integrand must be finite on the
// open interval (nodes are interior, endpoints are never evaluated).
QuadResult integrate(const std::function<double(double)>& f, double a,
                     double b, double abs_tol, int max_depth = 48);

} // namespace rangerenew
