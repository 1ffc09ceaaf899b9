#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mc_entropy.hpp"
#include "sampling.hpp"

namespace rgg {

// Standardized quadratic least squares y ~ a x~^2 + b x~ + c with
// x~ = (x - mu_x)/sigma_x, plus the unscaled maximizer and delta-method
// variances once delta_method_errors has run.
struct QuadraticFit {
    double a_tilde = 0.0, b_tilde = 0.0, c_tilde = 0.0;
    double mu_x = 0.0, sigma_x = 1.0;
    double x_max = 0.0;
    double y_max = 0.0;
    double var_x_max = 0.0;
    double var_y_max = 0.0;
    double condition_number = 0.0;
    double rss = 0.0;
    int n_points = 0;
    double s3_tilde = 0.0, s4_tilde = 0.0;  // standardized moment sums of x
};

// Throws on fewer than 3 points, singular normal equations, or a convex fit
// (a_tilde >= 0: no interior maximum).
QuadraticFit fit_quadratic(std::span<const double> x, std::span<const double> y);

struct DeltaErrors {
    double se_x_max = 0.0;
    double se_y_max = 0.0;
    double sigma2_bound = 0.0;  // 2^C(n,2) (1 + C(n,2))^2 N / L
};

// Delta-method errors with the crude per-point variance bound of the error
// analysis; also stores the variances into the fit.
DeltaErrors delta_method_errors(QuadraticFit& fit, int n_nodes, std::uint64_t L, int N);

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
    double coarse_argmax = 0.0;
    bool boundary_warning = false;
};

// Coarse scan over r0 in [0, D] with step D/50 at L0 samples per point; the
// bracket is the union of the argmax interval and its two neighbours.
Bracket coarse_scan(const EnsembleSpec& spec_template, std::uint64_t L0, std::uint64_t seed,
                    int threads = 0);

struct OptimizeResult {
    double r0_hat = 0.0;
    double se_r0 = 0.0;
    double h_max = 0.0;
    double se_h = 0.0;
    double p_bar_max = 0.0;
    QuadraticFit fit;
    Bracket bracket;
    std::vector<CurvePoint> grid;
    bool rebracketed = false;
};

// Full pipeline: coarse scan, N-point refined grid at L
// samples per point, standardized quadratic fit, delta-method errors, and
// p-bar at the fitted maximizer. Re-brackets once if the fitted maximizer
// escapes the bracket, then fails.
OptimizeResult optimize_r0(const EnsembleSpec& spec_template, std::uint64_t L, int N,
                           std::uint64_t seed, int threads = 0);

}  // namespace rgg
