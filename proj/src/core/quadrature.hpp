#pragma once

#include <functional>
#include <initializer_list>
#include <vector>

namespace rgg {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
};

// Adaptive Gauss-Kronrod (G7,K15) on [a,b] to absolute tolerance abs_tol.
// `breakpoints` marks known kinks (e.g. the torus metric fold at |x-y|=1/2);
// the initial subdivision is split there so the adaptive refinement only ever
// sees smooth pieces.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-12,
                           const std::vector<double>& breakpoints = {});

// Convenience: value only; throws std::runtime_error when not converged.
double integrate_checked(const std::function<double(double)>& f, double a, double b,
                         double abs_tol = 1e-12,
                         const std::vector<double>& breakpoints = {});

}  // namespace rgg
