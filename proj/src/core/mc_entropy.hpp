#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sampling.hpp"

namespace rgg {

// Plug-in entropy with the Roulston corrections. The error terms are derived
// from natural-log estimators, so they are carried in nats; the *_bits
// accessors divide by ln 2 to sit alongside the base-2 entropy.
struct EntropyEstimate {
    double entropy_bits = 0.0;
    double systematic_error_nats = 0.0;  // (2^C(n,2) - 1) / (2L), exactly
    double standard_error_nats = 0.0;
    std::uint64_t L = 0;

    double systematic_error_bits() const;
    double standard_error_bits() const;
};

EntropyEstimate estimate_entropy(std::span<const std::uint64_t> counts, std::uint64_t L);

struct CurvePoint {
    double r0 = 0.0;
    EntropyEstimate estimate;
};

// One MC entropy estimate per r0 grid point; each point gets an independent
// derived seed so the grid can be evaluated in any order or in parallel.
std::vector<CurvePoint> entropy_curve(const EnsembleSpec& spec_template,
                                      const std::vector<double>& r0_grid, std::uint64_t L_per_point,
                                      std::uint64_t seed, int threads = 0);

}  // namespace rgg
