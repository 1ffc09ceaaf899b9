#include "exact_small.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace rgg {

namespace {

double plog2p(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

// Horner forms of the table polynomials.
ExactPieces torus_pieces(double r0) {
    ExactPieces e;
    e.geometry = ExactGeometry::Torus1D;
    e.r0 = r0;
    if (r0 >= 0.5) {
        e.p3 = 1.0;
        return e;
    }
    if (r0 < 1.0 / 3.0) {
        e.p3 = 3.0 * r0 * r0;
        e.p2 = r0 * r0;
        e.p1 = r0 * (2.0 - 5.0 * r0);
        e.p0 = (1.0 - 3.0 * r0) * (1.0 - 3.0 * r0);
    } else {
        e.p3 = 1.0 + r0 * (-6.0 + 12.0 * r0);
        e.p2 = -1.0 + r0 * (6.0 - 8.0 * r0);
        e.p1 = (2.0 * r0 - 1.0) * (2.0 * r0 - 1.0);
        e.p0 = 0.0;
    }
    return e;
}

ExactPieces line_pieces(double r0) {
    ExactPieces e;
    e.geometry = ExactGeometry::Line1D;
    e.r0 = r0;
    if (r0 >= 1.0) {
        e.p3 = 1.0;
        return e;
    }
    e.p3 = r0 * r0 * (3.0 - 2.0 * r0);
    if (r0 < 0.5) {
        e.p2 = r0 * r0 * (1.0 - 4.0 / 3.0 * r0);
        e.p1 = r0 * (2.0 + r0 * (-6.0 + 14.0 / 3.0 * r0));
        const double t = 1.0 - 2.0 * r0;
        e.p0 = t * t * t;
    } else {
        const double s = 3.0 * r0 - 1.0;
        e.p2 = 4.0 / 3.0 * r0 * r0 * r0 - s * s / 3.0;
        const double t = 1.0 - r0;
        e.p1 = 2.0 / 3.0 * t * t * t;
        e.p0 = 0.0;
    }
    return e;
}

}  // namespace

ExactPieces exact_probabilities(ExactGeometry geometry, double r0) {
    if (r0 < 0.0) throw std::domain_error("exact_probabilities: r0 must be >= 0");
    return geometry == ExactGeometry::Torus1D ? torus_pieces(r0) : line_pieces(r0);
}

double exact_entropy(ExactGeometry geometry, double r0) {
    const ExactPieces e = exact_probabilities(geometry, r0);
    const double h = -(plog2p(e.p0) + 3.0 * plog2p(e.p1) + 3.0 * plog2p(e.p2) + plog2p(e.p3));
    return h == 0.0 ? 0.0 : h;
}

double exact_pbar(ExactGeometry geometry, double r0) {
    if (geometry == ExactGeometry::Torus1D) return std::min(2.0 * r0, 1.0);
    if (r0 >= 1.0) return 1.0;
    return r0 * (2.0 - r0);
}

ExactMaximizer exact_maximizer(ExactGeometry geometry) {
    if (geometry == ExactGeometry::Torus1D) {
        return {0.25, exact_entropy(geometry, 0.25), 0.5};
    }
    // Golden-section search on [0.2, 0.36]; the line entropy is unimodal there.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.2, b = 0.36;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = exact_entropy(geometry, c);
    double fd = exact_entropy(geometry, d);
    while (b - a > 1e-8) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = exact_entropy(geometry, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = exact_entropy(geometry, d);
        }
    }
    const double r0 = 0.5 * (a + b);
    return {r0, exact_entropy(geometry, r0), exact_pbar(geometry, r0)};
}

GraphDistribution exact_distribution(ExactGeometry geometry, double r0) {
    const ExactPieces e = exact_probabilities(geometry, r0);
    GraphDistribution dist;
    dist.n = 3;
    dist.method = DistributionMethod::Exact;
    dist.probs.resize(8);
    const double by_k[4] = {e.p0, e.p1, e.p2, e.p3};
    for (std::uint64_t g = 0; g < 8; ++g) dist.probs[g] = by_k[std::popcount(g)];
    dist.entropy_bits = entropy_bits(dist.probs);
    return dist;
}

}  // namespace rgg
