#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "limit.hpp"

namespace rgg {

// Coordinate-level third moments of the centered squared distances, one per
// slot-overlap pattern. e5-e7 vanish by independence (a disjoint factor has
// mean zero); e8 (the path pattern) is evaluated as a vanishing check.
struct ThirdMoments {
    double e1 = 0.0;  // same pair cubed,        E[q_ij^3]
    double e2 = 0.0;  // repeated pair + shared, E[q_ij^2 q_ik]
    double e3 = 0.0;  // triangle,               E[q_ij q_jk q_ki]
    double e4 = 0.0;  // star,                   E[q_ij q_ik q_il]
    double e5 = 0.0, e6 = 0.0, e7 = 0.0;
    double e8 = 0.0;
};

ThirdMoments third_moments(GeometryKind kind, const CoordinateDistribution& dist);

struct EdgeworthModel {
    CovarianceModel base;
    ThirdMoments moments;
    int n = 3;
    Matrix sigma;
    Matrix precision_inverse;
};

EdgeworthModel make_edgeworth_model(GeometryKind kind, const CoordinateDistribution& dist, int n);

enum class HermiteConfig { H1, H2, H3, H4 };

// Hermite polynomial of the defining identity
//   (-1)^|a| d^a N(0,Sigma)(q) = H_a(q) N(0,Sigma)(q)
// for the third-order multi-index given by `slots`: one slot for H1 (taken
// thrice), two for H2 (first taken twice), three for H3/H4.
double hermite_value(const EdgeworthModel& model, HermiteConfig config, std::span<const double> q,
                     std::span<const int> slots);

// All |alpha| = 3 slot combinations with nonvanishing moments, as unordered
// triples (a <= b <= c is not required; repeats encode multiplicity) plus the
// multinomial coefficient 3!/prod(mult!) and the e-pattern index (1..4).
struct SlotCombo {
    int a, b, c;
    double coeff;
    int pattern;
};

std::vector<SlotCombo> third_order_combos(int n);

// One MC pass over N(0,Sigma): each draw lands in its A_g and accumulates
// 1 + (6 sqrt(d))^-1 sum e_alpha H_alpha(q); probabilities are clamped at 0
// and renormalized, with the clamped mass and pre-normalization deficit kept
// on the returned distribution.
GraphDistribution edgeworth_distribution(const EdgeworthModel& model, double t, int d,
                                         std::uint64_t M, std::uint64_t seed, int threads = 0);

struct DimensionPoint {
    int d = 0;
    double entropy_bits = 0.0;
    double clamped_mass = 0.0;
};

// Linear least squares of H(d) = a - b (d^-1/2 + c). The family is only
// identified up to (a - b c, b), so c is reported as 0 and a is the
// d -> infinity intercept.
struct DimensionFit {
    double a = 0.0, b = 0.0, c = 0.0;
    double se_a = 0.0, se_b = 0.0;
};

std::pair<std::vector<DimensionPoint>, DimensionFit> entropy_vs_dimension(
    GeometryKind kind, const CoordinateDistribution& dist, int n, double t,
    const std::vector<int>& d_grid, std::uint64_t M, std::uint64_t seed, int threads = 0);

DimensionFit fit_dimension_curve(const std::vector<DimensionPoint>& pts);

}  // namespace rgg
