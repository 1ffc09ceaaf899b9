#pragma once

#include <cstdint>
#include <vector>

#include "geometry.hpp"
#include "graphs.hpp"
#include "rng.hpp"

namespace rgg {

struct ConnectionModel {
    enum class Kind { Hard, Rayleigh };
    Kind kind = Kind::Hard;
    double r0 = 0.0;
    double eta = 2.0;  // Rayleigh path-loss exponent

    static ConnectionModel hard(double r0);
    static ConnectionModel rayleigh(double r0, double eta);

    // Connection probability at distance r.
    double probability(double r) const;
};

struct EnsembleSpec {
    Geometry geometry;
    int n = 3;
    CoordinateDistribution dist = CoordinateDistribution::uniform();
    ConnectionModel connection;

    void validate() const;
    EnsembleSpec with_r0(double r0) const;
};

// One graph draw: n iid points, each pair connected deterministically (hard)
// or by an independent uniform draw against p(r/r0) (Rayleigh).
LabeledGraph sample_graph(const EnsembleSpec& spec, PhiloxStream& rng);

// Builds the hard/soft graph on already-sampled points. For soft connections
// the per-pair uniforms come from `rng`.
LabeledGraph graph_from_points(const EnsembleSpec& spec, const std::vector<Point>& pts,
                               PhiloxStream& rng);
std::uint64_t hard_mask_from_points(const Geometry& g, const std::vector<Point>& pts, double r0);

// L draws accumulated into a count vector over all 2^C(n,2) graphs.
// Deterministic for fixed (spec, L, seed) regardless of thread count.
// Requires n <= 7; larger n must use sample_edge_count_histogram.
std::vector<std::uint64_t> sample_counts(const EnsembleSpec& spec, std::uint64_t L,
                                         std::uint64_t seed, int threads = 0);

// Edge-count histogram (m+1 bins) for any n <= 11.
std::vector<std::uint64_t> sample_edge_count_histogram(const EnsembleSpec& spec, std::uint64_t L,
                                                       std::uint64_t seed, int threads = 0);

// Average connection probability p-bar of Definition 5, by nested quadrature
// over the coordinate-distance law. Uniform coordinates, dimension <= 3.
double pbar_quadrature(const Geometry& g, const ConnectionModel& c);

}  // namespace rgg
