#pragma once

#include <functional>
#include <vector>

namespace rbm {

struct QuadResult {
    double value = 0.0;
    double error = 0.0; // estimate
};

// Adaptive Gauss-Kronrod (G7,K15). Handles integrable endpoint/log
// singularities through bisection; callers should split the interval at
// known singular points so no node lands exactly on one.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, int max_depth = 48);

// Same, splitting [a,b] at the given interior points first.
QuadResult integrate_adaptive_split(const std::function<double(double)>& f, double a, double b,
                                    const std::vector<double>& split_points, double abs_tol,
                                    int max_depth = 48);

// Periodic trapezoid rule over [0,1) with n nodes (spectrally accurate for
// smooth periodic integrands).
double trapezoid_periodic(int n, const std::function<double(double)>& f);

} // namespace rbm
