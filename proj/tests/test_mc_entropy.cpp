#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "exact_small.hpp"
#include "mc_entropy.hpp"

using namespace rgg;

namespace {
constexpr double kLn2 = 0.6931471805599453;

EnsembleSpec torus3(double r0) {
    EnsembleSpec s;
    s.geometry = {GeometryKind::Torus, 1};
    s.n = 3;
    s.connection = ConnectionModel::hard(r0);
    return s;
}

EnsembleSpec line3(double r0) {
    EnsembleSpec s;
    s.geometry = {GeometryKind::Cube, 1};
    s.n = 3;
    s.connection = ConnectionModel::hard(r0);
    return s;
}
}  // namespace

TEST_CASE("systematic error is (2^C(n,2)-1)/(2L) in nats") {
    std::vector<std::uint64_t> counts(8, 0);
    counts[0] = 100'000'000;
    const EntropyEstimate e = estimate_entropy(counts, 100'000'000);
    CHECK(e.systematic_error_nats == doctest::Approx(3.5e-8).epsilon(1e-12));
    CHECK(e.systematic_error_bits() == doctest::Approx(3.5e-8 / kLn2).epsilon(1e-12));
}

TEST_CASE("point mass gives zero entropy and zero standard error") {
    std::vector<std::uint64_t> counts(8, 0);
    counts[5] = 1000;
    const EntropyEstimate e = estimate_entropy(counts, 1000);
    CHECK(e.entropy_bits == 0.0);
    CHECK(e.standard_error_nats == 0.0);
}

TEST_CASE("uniform counts over 8 graphs: entropy 3 bits, sigma per the formula") {
    const std::uint64_t per = 1'000'000;
    std::vector<std::uint64_t> counts(8, per);
    const std::uint64_t L = 8 * per;
    const EntropyEstimate e = estimate_entropy(counts, L);
    CHECK(e.entropy_bits == doctest::Approx(3.0).epsilon(1e-12));
    // direct evaluation of the variance formula with p_i = 1/8:
    // sigma^2 = (1/L) * 8 * (ln(1/8) + H_nats)^2 * (1/8)(7/8) = 0 since
    // ln(p_i) + H = 0 exactly for the uniform distribution.
    CHECK(e.standard_error_nats == doctest::Approx(0.0).epsilon(1e-15));

    // a non-uniform case against a hand-evaluated oracle
    std::vector<std::uint64_t> c2 = {600, 200, 100, 100};
    const EntropyEstimate e2 = estimate_entropy(c2, 1000);
    const double ps[4] = {0.6, 0.2, 0.1, 0.1};
    double h = 0.0;
    for (double p : ps) h -= p * std::log(p);
    double var = 0.0;
    for (double p : ps) var += (std::log(p) + h) * (std::log(p) + h) * p * (1 - p);
    CHECK(e2.entropy_bits == doctest::Approx(h / kLn2).epsilon(1e-12));
    CHECK(e2.standard_error_nats == doctest::Approx(std::sqrt(var / 1000)).epsilon(1e-12));
}

TEST_CASE("estimate_entropy input validation") {
    std::vector<std::uint64_t> counts(8, 1);
    CHECK_THROWS_AS(static_cast<void>(estimate_entropy(counts, 9)), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(estimate_entropy(counts, 0)), std::invalid_argument);
}

TEST_CASE("bias direction: adding E_sys moves the mean estimate toward the truth") {
    const double r0 = 0.2;
    const double h_exact = exact_entropy(ExactGeometry::Torus1D, r0);
    const EnsembleSpec spec = torus3(r0);
    const std::uint64_t L = 2000;
    const int reps = 400;
    double mean_plain = 0.0, esys_bits = 0.0;
    for (int r = 0; r < reps; ++r) {
        const auto counts = sample_counts(spec, L, derive_seed(808, r));
        const EntropyEstimate e = estimate_entropy(counts, L);
        mean_plain += e.entropy_bits;
        esys_bits = e.systematic_error_bits();
    }
    mean_plain /= reps;
    CHECK(std::fabs(mean_plain + esys_bits - h_exact) < std::fabs(mean_plain - h_exact));
}

TEST_CASE("reported sigma scales as 1/sqrt(L)") {
    const EnsembleSpec spec = torus3(0.25);
    const std::uint64_t L = 400'000;
    const auto c1 = sample_counts(spec, L, 5);
    const auto c2 = sample_counts(spec, 2 * L, 6);
    const double s1 = estimate_entropy(c1, L).standard_error_nats;
    const double s2 = estimate_entropy(c2, 2 * L).standard_error_nats;
    CHECK(s1 / s2 == doctest::Approx(std::sqrt(2.0)).epsilon(0.10));
}

TEST_CASE("estimates agree with the exact curve within 3 sigma + E_sys") {
    PhiloxStream pick(2718, 0);
    const std::uint64_t L = 100'000;
    for (int rep = 0; rep < 6; ++rep) {
        const double r0 = 0.05 + 0.4 * pick.next_double();
        const auto counts = sample_counts(torus3(r0), L, derive_seed(1618, rep));
        const EntropyEstimate e = estimate_entropy(counts, L);
        const double tol = 3.0 * e.standard_error_bits() + e.systematic_error_bits();
        CHECK(std::fabs(e.entropy_bits - exact_entropy(ExactGeometry::Torus1D, r0)) < tol);
    }
}

TEST_CASE("entropy curve peaks at 1/4 among {0.1, 0.25, 0.4}") {
    const auto curve = entropy_curve(torus3(0.0), {0.1, 0.25, 0.4}, 100'000, 42);
    REQUIRE(curve.size() == 3);
    CHECK(curve[1].estimate.entropy_bits > curve[0].estimate.entropy_bits);
    CHECK(curve[1].estimate.entropy_bits > curve[2].estimate.entropy_bits);
}

TEST_CASE("single-point grid gives a single estimate") {
    const auto curve = entropy_curve(torus3(0.0), {0.25}, 10'000, 42);
    CHECK(curve.size() == 1);
    CHECK(curve[0].r0 == 0.25);
    CHECK_THROWS_AS(static_cast<void>(entropy_curve(torus3(0.0), {}, 10, 1)),
                    std::invalid_argument);
}

TEST_CASE("line curve argmax lands near 0.283") {
    std::vector<double> grid(100);
    for (int i = 0; i < 100; ++i) grid[i] = 0.2 + 0.16 * i / 99.0;
    const auto curve = entropy_curve(line3(0.0), grid, 1'000'000, 7);
    std::size_t best = 0;
    for (std::size_t i = 1; i < curve.size(); ++i)
        if (curve[i].estimate.entropy_bits > curve[best].estimate.entropy_bits) best = i;
    CHECK(std::fabs(curve[best].r0 - 0.283) < 0.02);
}
