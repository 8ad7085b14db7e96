#pragma once

#include <functional>

namespace stabest {

// Adaptive Gauss-Kronrod 15(7) on a finite interval. Throws numeric_error if
// the requested relative tolerance is not reached within max_depth bisections.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-12, int max_depth = 40);

} // namespace stabest
