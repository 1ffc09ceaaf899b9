#pragma once

#include "graphs.hpp"

namespace rgg {

enum class ExactGeometry { Torus1D, Line1D };

// Per-graph probabilities for the 3-node hard RGG with uniform nodes in one
// dimension: p_k is the probability of one specific labelled graph with k
// edges, so p0 + 3 p1 + 3 p2 + p3 = 1.
struct ExactPieces {
    ExactGeometry geometry = ExactGeometry::Torus1D;
    double r0 = 0.0;
    double p0 = 0.0, p1 = 0.0, p2 = 0.0, p3 = 0.0;
};

ExactPieces exact_probabilities(ExactGeometry geometry, double r0);

double exact_entropy(ExactGeometry geometry, double r0);

// p-bar(r0) for the two closed-form ensembles: torus f(r)=2 on [0,1/2],
// line f(r)=2(1-r) on [0,1].
double exact_pbar(ExactGeometry geometry, double r0);

struct ExactMaximizer {
    double r0_hat = 0.0;
    double entropy_max = 0.0;
    double p_bar_max = 0.0;
};

// Torus: analytic maximizer 1/4. Line: golden-section search to 1e-8.
ExactMaximizer exact_maximizer(ExactGeometry geometry);

// Full 8-graph distribution at r0 (n = 3).
GraphDistribution exact_distribution(ExactGeometry geometry, double r0);

}  // namespace rgg
