#pragma once

#include <functional>

namespace qdot {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels = 0;
};

// Composite 15-point Gauss-Kronrod rule with n_panels equal panels.  The
// error estimate is the summed |K15 - G7| difference.  Fully deterministic.
QuadResult gk15_composite(const std::function<double(double)>& f, double a, double b,
                          int n_panels);

// Panel-doubling driver: starts at n_panels and doubles until two successive
// composite values agree to rel_tol (or the embedded estimate is already
// small enough).  Throws NumericError on non-convergence.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol, int n_panels_start = 8, int max_doublings = 12);

}  // namespace qdot
