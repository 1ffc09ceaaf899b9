#include "mc_entropy.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rgg {

namespace {
constexpr double kLn2 = 0.6931471805599453094172321214581766;
}

double EntropyEstimate::systematic_error_bits() const { return systematic_error_nats / kLn2; }
double EntropyEstimate::standard_error_bits() const { return standard_error_nats / kLn2; }

EntropyEstimate estimate_entropy(std::span<const std::uint64_t> counts, std::uint64_t L) {
    if (L == 0) throw std::invalid_argument("estimate_entropy: L must be > 0");
    std::uint64_t sum = 0;
    for (const std::uint64_t c : counts) sum += c;
    if (sum != L) throw std::invalid_argument("estimate_entropy: counts must sum to L");
    if (sum == 0) throw std::invalid_argument("estimate_entropy: all counts are zero");

    const double invL = 1.0 / static_cast<double>(L);
    double h_nats = 0.0;
    for (const std::uint64_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) * invL;
        h_nats -= p * std::log(p);
    }
    // Zero-count graphs contribute nothing to either sum: p log p -> 0 and the
    // p(1-p) factor vanishes.
    double var_nats = 0.0;
    for (const std::uint64_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) * invL;
        const double t = std::log(p) + h_nats;
        var_nats += t * t * p * (1.0 - p);
    }

    EntropyEstimate e;
    e.L = L;
    e.entropy_bits = h_nats / kLn2;
    // counts.size() is 2^C(n,2), so this is (2^C(n,2) - 1) / (2L).
    e.systematic_error_nats =
        (static_cast<double>(counts.size()) - 1.0) / (2.0 * static_cast<double>(L));
    e.standard_error_nats = std::sqrt(var_nats * invL);
    return e;
}

std::vector<CurvePoint> entropy_curve(const EnsembleSpec& spec_template,
                                      const std::vector<double>& r0_grid, std::uint64_t L_per_point,
                                      std::uint64_t seed, int threads) {
    if (r0_grid.empty()) throw std::invalid_argument("entropy_curve: empty grid");
    if (L_per_point == 0) throw std::invalid_argument("entropy_curve: L must be > 0");
    std::vector<CurvePoint> out(r0_grid.size());
    for (std::size_t i = 0; i < r0_grid.size(); ++i) {
        const EnsembleSpec spec = spec_template.with_r0(r0_grid[i]);
        const std::vector<std::uint64_t> counts =
            sample_counts(spec, L_per_point, derive_seed(seed, i), threads);
        out[i] = {r0_grid[i], estimate_entropy(counts, L_per_point)};
    }
    return out;
}

}  // namespace rgg
