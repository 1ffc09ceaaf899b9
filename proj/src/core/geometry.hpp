#pragma once

#include <string>
#include <vector>

#include "rng.hpp"

namespace rgg {

enum class GeometryKind { Cube, Torus };

struct Geometry {
    GeometryKind kind = GeometryKind::Cube;
    int dimension = 1;

    // Maximum pairwise distance in the domain.
    double diameter() const;
};

using Point = std::vector<double>;

// Distance between torus coordinates, min(|x-y|, 1-|x-y|) in [0, 1/2].
double torus_coordinate_distance(double x, double y);

double distance(const Geometry& g, const Point& a, const Point& b);

// One coordinate's law on [0,1]. Immutable after construction; sampling state
// is the caller's PhiloxStream, so instances are safe to share across threads.
class CoordinateDistribution {
public:
    enum class Kind { Uniform, TruncatedGaussian, Bernoulli, Tabulated };

    static CoordinateDistribution uniform();
    // Gaussian centered at 1/2 restricted to [0,1]: density = exp(-(x-1/2)^2)/Z.
    static CoordinateDistribution truncated_gaussian();
    static CoordinateDistribution bernoulli(double p);
    // Density samples on a uniform grid spanning [0,1]; rescaled to unit mass.
    static CoordinateDistribution tabulated(std::vector<double> density);
    static CoordinateDistribution tabulated_from_csv(const std::string& path);

    Kind kind() const { return kind_; }
    double bernoulli_p() const { return p_; }
    bool is_discrete() const { return kind_ == Kind::Bernoulli; }

    double pdf(double x) const;          // continuous kinds only
    double cdf(double x) const;
    double sample(PhiloxStream& rng) const;

    // Central moments of the coordinate law (exact for Uniform/Bernoulli,
    // per-cell closed form of the interpolant otherwise).
    double mean() const { return mean_; }
    double variance() const { return var_; }
    double central_moment(int k) const;  // k in {2,3,4}

private:
    CoordinateDistribution() = default;
    void build_tables(std::vector<double> grid_values);

    Kind kind_ = Kind::Uniform;
    double p_ = 0.5;                      // Bernoulli parameter
    double norm_ = 1.0;                   // truncated-Gaussian normalizer Z
    std::vector<double> pdf_grid_;        // density at the 4097-point grid
    std::vector<double> slopes_;          // monotone-cubic slopes of pdf_grid_
    std::vector<double> grid_cdf_;        // CDF at the grid nodes
    double mean_ = 0.5, var_ = 0.0, m3_ = 0.0, m4_ = 0.0;
};

Point sample_point(const Geometry& g, const CoordinateDistribution& dist, PhiloxStream& rng);

}  // namespace rgg
