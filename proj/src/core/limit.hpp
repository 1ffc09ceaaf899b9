#pragma once

#include <cstdint>
#include <vector>

#include "geometry.hpp"
#include "graphs.hpp"
#include "linalg.hpp"

namespace rgg {

// Gaussian model of the d->infinity centered squared pair distances.
// alpha: same-pair variance; beta: covariance of pairs sharing one node;
// gamma: covariance of disjoint pairs, 0 for iid nodes by the definition
// of mu.
struct CovarianceModel {
    GeometryKind geometry_kind = GeometryKind::Torus;
    double mu = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

CovarianceModel covariance_model(GeometryKind kind, const CoordinateDistribution& dist);

// Fourth central moment over squared variance of the coordinate law.
// Throws std::domain_error when the law is almost surely constant.
double kurtosis(const CoordinateDistribution& dist);

struct ErDiagnostics {
    bool converges = false;
    double beta = 0.0;
    double kurtosis = 0.0;
};

// ER convergence iff the one-node-shared covariance vanishes (|beta| < 1e-9):
// uniform coordinates on the torus, kurtosis-1 laws on the cube.
ErDiagnostics converges_to_er(GeometryKind kind, const CoordinateDistribution& dist);

// Normalised connection range t_d = r0^2/sqrt(d) - mu sqrt(d) and inverse.
double normalised_range(const CovarianceModel& model, double r0, int d);
double r0_for_t(const CovarianceModel& model, double t, int d);

// C(n,2) x C(n,2) covariance: alpha on the diagonal, beta where slots share
// exactly one node, gamma elsewhere.
Matrix assemble_covariance(const CovarianceModel& model, int n);

// Limit per-edge marginal Phi(t / sqrt(alpha)).
double limit_edge_probability(const CovarianceModel& model, double t);

struct LimitOptions {
    std::uint64_t samples = 10'000'000;  // MC draws when beta != 0
    std::uint64_t seed = 1;
    int threads = 0;
    bool force_mc = false;  // evaluate by MC even when the product form applies
};

// P(g) = P(Z in A_g) for Z ~ N(0, Sigma): exact product of univariate CDFs
// when beta = 0, otherwise Monte Carlo over Cholesky-sampled draws, all
// graphs classified from one shared stream. Requires n <= 7.
GraphDistribution gaussian_limit_distribution(const CovarianceModel& model, int n, double t,
                                              const LimitOptions& opt = {});

struct LimitCurvePoint {
    double t = 0.0;
    double entropy_bits = 0.0;
    double p_bar = 0.0;
};

std::vector<LimitCurvePoint> limit_entropy_curve(const CovarianceModel& model, int n,
                                                 const std::vector<double>& t_grid,
                                                 const LimitOptions& opt = {});

// Soft RGG limit: with r0(d) = sqrt(k d), the ensemble tends to G(n, p_k)
// with p_k = exp(-(mu/k)^(eta/2)).
double soft_limit_probability(double eta, double k_scale, const CovarianceModel& model);
// The k that lands the limit at a target edge probability.
double soft_k_for_probability(double eta, double target_p, const CovarianceModel& model);

// Entropy of the limit ensemble for n > 7 (no full vector): the exchangeable
// Gaussian is decomposed as q_ij = sqrt(beta)(V_i+V_j) + sqrt(alpha-2beta)U_ij,
// giving conditionally independent edges; H = -E_g[log2 P(g)] with P(g)
// averaged over inner V draws.
double limit_entropy_large_n(const CovarianceModel& model, int n, double t,
                             std::uint64_t graph_samples, std::uint64_t inner_samples,
                             std::uint64_t seed, int threads = 0);

}  // namespace rgg
