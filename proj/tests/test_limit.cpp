#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <cmath>

#include "limit.hpp"
#include "sampling.hpp"

using namespace rgg;

namespace {
const CoordinateDistribution kUniform = CoordinateDistribution::uniform();
const CoordinateDistribution kTG = CoordinateDistribution::truncated_gaussian();

double roulston_sigma_bits(const GraphDistribution& d, std::uint64_t M) {
    double var = 0.0;
    for (double p : d.probs) {
        if (p <= 0.0) continue;
        const double t = std::log(p) + d.entropy_bits * 0.6931471805599453;
        var += t * t * p * (1 - p);
    }
    return std::sqrt(var / static_cast<double>(M)) / 0.6931471805599453;
}
}  // namespace

TEST_CASE("uniform covariance constants") {
    const CovarianceModel c = covariance_model(GeometryKind::Cube, kUniform);
    CHECK(std::fabs(c.mu - 1.0 / 6.0) < 1e-10);
    CHECK(std::fabs(c.alpha - 7.0 / 180.0) < 1e-10);
    CHECK(std::fabs(c.beta - 1.0 / 180.0) < 1e-10);
    CHECK(c.gamma == 0.0);
    const CovarianceModel t = covariance_model(GeometryKind::Torus, kUniform);
    CHECK(std::fabs(t.mu - 1.0 / 12.0) < 1e-10);
    CHECK(std::fabs(t.alpha - 1.0 / 180.0) < 1e-10);
    CHECK(std::fabs(t.beta) < 1e-10);
}

TEST_CASE("truncated gaussian covariance values") {
    const CovarianceModel t = covariance_model(GeometryKind::Torus, kTG);
    CHECK(t.alpha == doctest::Approx(0.005548823).epsilon(1e-6));
    CHECK(t.beta == doctest::Approx(1.26762e-5).epsilon(1e-4));
    // published rounded values
    CHECK(std::fabs(t.alpha - 0.005549) < 1e-6);
    CHECK(std::fabs(t.beta - 1.3e-5) < 2e-6);

    const CovarianceModel c = covariance_model(GeometryKind::Cube, kTG);
    CHECK(c.mu == doctest::Approx(0.155828256).epsilon(1e-7));
    CHECK(c.alpha == doctest::Approx(0.034840671).epsilon(1e-7));
    CHECK(c.beta == doctest::Approx(5.279113e-3).epsilon(1e-6));
}

TEST_CASE("bernoulli coordinates") {
    const auto b = CoordinateDistribution::bernoulli(0.5);
    const CovarianceModel torus = covariance_model(GeometryKind::Torus, b);
    CHECK(torus.mu == 0.0);
    CHECK(torus.alpha == 0.0);
    const CovarianceModel cube = covariance_model(GeometryKind::Cube, b);
    CHECK(cube.mu == doctest::Approx(0.5));
    CHECK(std::fabs(cube.beta) < 1e-15);
}

TEST_CASE("kurtosis") {
    CHECK(kurtosis(CoordinateDistribution::bernoulli(0.5)) == 1.0);
    CHECK(std::fabs(kurtosis(kUniform) - 1.8) < 1e-9);
    CHECK(kurtosis(CoordinateDistribution::bernoulli(0.3)) ==
          doctest::Approx(37.0 / 21.0).epsilon(1e-12));
    CHECK(kurtosis(CoordinateDistribution::bernoulli(0.3)) > 1.0);
    CHECK_THROWS_AS(kurtosis(CoordinateDistribution::bernoulli(0.0)), std::domain_error);
}

TEST_CASE("ER convergence classifier") {
    CHECK(converges_to_er(GeometryKind::Torus, kUniform).converges);
    CHECK_FALSE(converges_to_er(GeometryKind::Torus, kTG).converges);
    CHECK(converges_to_er(GeometryKind::Cube, CoordinateDistribution::bernoulli(0.5)).converges);
    CHECK_FALSE(converges_to_er(GeometryKind::Cube, kUniform).converges);
    const ErDiagnostics d = converges_to_er(GeometryKind::Torus, kTG);
    CHECK(d.beta > 1e-6);
}

TEST_CASE("normalised range and its inverse") {
    const CovarianceModel t = covariance_model(GeometryKind::Torus, kUniform);
    CHECK(r0_for_t(t, 0.0, 25) == doctest::Approx(std::sqrt(25.0 / 12.0)).epsilon(1e-13));
    CHECK(normalised_range(t, std::sqrt(100.0 / 12.0), 100) == doctest::Approx(0.0).epsilon(1e-12));
    for (double tt : {-0.4, 0.0, 0.7}) {
        const double r0 = r0_for_t(t, tt, 30);
        CHECK(normalised_range(t, r0, 30) == doctest::Approx(tt).epsilon(1e-12));
    }
    CHECK_THROWS_AS(r0_for_t(t, -10.0, 4), std::domain_error);
}

TEST_CASE("assembled covariance structure and spectrum") {
    const CovarianceModel c = covariance_model(GeometryKind::Cube, kUniform);
    for (int n : {3, 4, 5}) {
        const Matrix s = assemble_covariance(c, n);
        CHECK_NOTHROW(static_cast<void>(cholesky(s)));
        // Johnson-structure eigenvalues must all be nonnegative
        CHECK(c.alpha - 2 * c.beta >= -1e-12);
        CHECK(c.alpha + (n - 4) * c.beta >= -1e-12);
        CHECK(c.alpha + 2 * (n - 2) * c.beta >= -1e-12);
        // spot-check entries
        CHECK(s(0, 0) == c.alpha);
        CHECK(s(0, 1) == c.beta);  // (0,1) and (0,2) share node 0
        if (n >= 4) CHECK(s(0, pair_count(n) - 1) == 0.0);  // (0,1) vs (n-2,n-1)
    }
    CovarianceModel bad = c;
    bad.beta = 0.6 * bad.alpha;  // violates alpha - 2 beta >= 0
    LimitOptions opt;
    opt.samples = 1000;
    CHECK_THROWS_AS(static_cast<void>(gaussian_limit_distribution(bad, 4, 0.0, opt)),
                    std::runtime_error);
}

TEST_CASE("torus uniform limit is the ER product form") {
    const CovarianceModel t = covariance_model(GeometryKind::Torus, kUniform);
    const GraphDistribution at0 = gaussian_limit_distribution(t, 4, 0.0);
    CHECK(at0.entropy_bits == doctest::Approx(6.0).epsilon(1e-12));
    for (double p : at0.probs) CHECK(p == doctest::Approx(1.0 / 64).epsilon(1e-12));

    const double tt = 0.01;
    const GraphDistribution d = gaussian_limit_distribution(t, 3, tt);
    const double pbar = limit_edge_probability(t, tt);
    for (std::uint64_t g = 0; g < 8; ++g) {
        const int k = std::popcount(g);
        CHECK(d.probs[g] ==
              doctest::Approx(std::pow(pbar, k) * std::pow(1 - pbar, 3 - k)).epsilon(1e-12));
    }
}

TEST_CASE("MC orthant probabilities agree with the product form when beta = 0") {
    const CovarianceModel t = covariance_model(GeometryKind::Torus, kUniform);
    LimitOptions opt;
    opt.samples = 2'000'000;
    opt.seed = 31;
    opt.force_mc = true;
    const double tt = 0.02;
    const GraphDistribution mc = gaussian_limit_distribution(t, 3, tt, opt);
    const GraphDistribution closed = gaussian_limit_distribution(t, 3, tt);
    for (std::uint64_t g = 0; g < 8; ++g) {
        const double se = std::sqrt(closed.probs[g] * (1 - closed.probs[g]) /
                                    static_cast<double>(opt.samples));
        CHECK(std::fabs(mc.probs[g] - closed.probs[g]) < 3.5 * se);
    }
}

TEST_CASE("MC limit distribution is deterministic across thread counts") {
    const CovarianceModel c = covariance_model(GeometryKind::Cube, kUniform);
    LimitOptions o1;
    o1.samples = 300'000;
    o1.seed = 2222;
    o1.threads = 1;
    LimitOptions o4 = o1;
    o4.threads = 4;
    const GraphDistribution a = gaussian_limit_distribution(c, 4, 0.0, o1);
    const GraphDistribution b = gaussian_limit_distribution(c, 4, 0.0, o4);
    CHECK(a.probs == b.probs);
}

TEST_CASE("cube uniform limit at t = 0") {
    const CovarianceModel c = covariance_model(GeometryKind::Cube, kUniform);
    LimitOptions opt;
    opt.samples = 2'000'000;
    opt.seed = 77;
    const GraphDistribution d = gaussian_limit_distribution(c, 3, 0.0, opt);

    // frozen reference: P(complete) = 0.1592217, entropy = 2.9829223
    const double se_g = std::sqrt(0.159222 * (1 - 0.159222) / 2e6);
    CHECK(std::fabs(d.probs[7] - 0.1592217) < 3.5 * se_g);
    CHECK(d.probs[7] > 1.0 / 8.0 + 3.0 * se_g);
    CHECK(d.entropy_bits == doctest::Approx(2.9829223).epsilon(2e-3));
    CHECK(d.entropy_bits < 3.0);

    // complement symmetry within MC error
    for (std::uint64_t g = 0; g < 8; ++g) {
        const std::uint64_t gc = 7 ^ g;
        const double se =
            std::sqrt(2.0 * d.probs[g] * (1 - d.probs[g]) / static_cast<double>(opt.samples));
        CHECK(std::fabs(d.probs[g] - d.probs[gc]) < 3.5 * std::max(se, 1e-9));
    }

    // edge marginal = Phi(t / sqrt(alpha)) = 1/2 at t = 0
    const double marg = edge_marginal(d, 1);
    CHECK(std::fabs(marg - 0.5) < 3.5 * std::sqrt(0.25 / static_cast<double>(opt.samples)));

    // average connection probability consistency
    CHECK(average_connection_probability(d) ==
          doctest::Approx(0.5).epsilon(2e-3));
}

TEST_CASE("edge marginal tracks Phi(t/sqrt(alpha)) away from zero") {
    const CovarianceModel c = covariance_model(GeometryKind::Cube, kUniform);
    LimitOptions opt;
    opt.samples = 1'000'000;
    opt.seed = 5150;
    const double t = 0.08;
    const GraphDistribution d = gaussian_limit_distribution(c, 3, t, opt);
    const double expect = limit_edge_probability(c, t);
    const double se = std::sqrt(expect * (1 - expect) / static_cast<double>(opt.samples));
    CHECK(std::fabs(edge_marginal(d, 0) - expect) < 3.5 * se);
}

TEST_CASE("limit entropy curve is symmetric and peaks at t = 0") {
    const CovarianceModel c = covariance_model(GeometryKind::Cube, kUniform);
    LimitOptions opt;
    opt.samples = 500'000;
    opt.seed = 8;
    const std::vector<double> grid = {-0.3, -0.15, 0.0, 0.15, 0.3};
    const auto curve = limit_entropy_curve(c, 3, grid, opt);
    REQUIRE(curve.size() == 5);
    const double noise = 3.0 * roulston_sigma_bits(gaussian_limit_distribution(c, 3, 0.0, opt),
                                                   opt.samples);
    CHECK(std::fabs(curve[0].entropy_bits - curve[4].entropy_bits) < 3 * noise + 0.01);
    CHECK(std::fabs(curve[1].entropy_bits - curve[3].entropy_bits) < 3 * noise + 0.01);
    CHECK(curve[2].entropy_bits > curve[0].entropy_bits);
    CHECK(curve[2].entropy_bits > curve[4].entropy_bits);
    CHECK(curve[2].p_bar == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("finite-d torus distributions approach the uniform limit") {
    EnsembleSpec spec;
    spec.geometry = {GeometryKind::Torus, 1};
    spec.n = 4;
    const CovarianceModel model = covariance_model(GeometryKind::Torus, kUniform);
    double prev_tv = 2.0, prev_noise = 0.0;
    for (int d : {4, 16, 64, 256}) {
        spec.geometry.dimension = d;
        spec.connection = ConnectionModel::hard(r0_for_t(model, 0.0, d));
        const std::uint64_t L = 1'000'000;
        const auto counts = sample_counts(spec, L, derive_seed(4455, d));
        double tv = 0.0, noise = 0.0;
        for (const auto cnt : counts) {
            const double p = static_cast<double>(cnt) / static_cast<double>(L);
            tv += std::fabs(p - 1.0 / 64.0);
            noise += std::sqrt(p * (1 - p) / static_cast<double>(L));
        }
        tv *= 0.5;
        noise *= 0.5;
        CHECK(tv < prev_tv + 3.0 * (noise + prev_noise));
        prev_tv = tv;
        prev_noise = noise;
    }
    CHECK(prev_tv < 0.05);
}

TEST_CASE("soft RGG limits") {
    const CovarianceModel t = covariance_model(GeometryKind::Torus, kUniform);
    // k -> infinity sends the limiting edge probability to p(0) = 1
    CHECK(soft_limit_probability(2.0, 1e9, t) == doctest::Approx(1.0).epsilon(1e-3));
    // solving p(sqrt(mu/k)) = 1/2
    for (double eta : {1.0, 2.0, 6.0}) {
        const double k = soft_k_for_probability(eta, 0.5, t);
        CHECK(soft_limit_probability(eta, k, t) == doctest::Approx(0.5).epsilon(1e-12));
    }
    // finite-d check at d = 200: per-edge frequency within 0.01 of 1/2
    const double k = soft_k_for_probability(2.0, 0.5, t);
    EnsembleSpec spec;
    spec.geometry = {GeometryKind::Torus, 200};
    spec.n = 2;
    spec.connection = ConnectionModel::rayleigh(std::sqrt(k * 200.0), 2.0);
    const std::uint64_t L = 200'000;
    const auto counts = sample_counts(spec, L, 3131);
    const double freq = static_cast<double>(counts[1]) / static_cast<double>(L);
    CHECK(std::fabs(freq - 0.5) < 0.01);
}

TEST_CASE("MC limit distribution is exchangeable across node relabellings") {
    const CovarianceModel c = covariance_model(GeometryKind::Cube, kUniform);
    LimitOptions opt;
    opt.samples = 1'000'000;
    opt.seed = 424242;
    const GraphDistribution d = gaussian_limit_distribution(c, 4, 0.0, opt);
    const std::vector<std::vector<int>> perms = {{1, 0, 2, 3}, {3, 2, 1, 0}, {1, 2, 3, 0}};
    for (std::uint64_t g = 0; g < d.size(); ++g) {
        for (const auto& perm : perms) {
            const double other = d.probs[relabel_mask(4, g, perm)];
            const double se =
                std::sqrt(2.0 * d.probs[g] * (1 - d.probs[g]) / static_cast<double>(opt.samples));
            CHECK(std::fabs(d.probs[g] - other) < 4.0 * std::max(se, 1e-9));
        }
    }
}

TEST_CASE("latent-decomposition entropy estimator matches the small-n path") {
    const CovarianceModel c = covariance_model(GeometryKind::Cube, kUniform);
    LimitOptions opt;
    opt.samples = 2'000'000;
    opt.seed = 6;
    const GraphDistribution ref = gaussian_limit_distribution(c, 4, 0.0, opt);
    const double h = limit_entropy_large_n(c, 4, 0.0, 1500, 4000, 9);
    CHECK(h == doctest::Approx(ref.entropy_bits).epsilon(0.01));
    // beta = 0 short-circuits to the closed form
    const CovarianceModel t = covariance_model(GeometryKind::Torus, kUniform);
    CHECK(limit_entropy_large_n(t, 11, 0.0, 10, 10, 1) == doctest::Approx(55.0).epsilon(1e-12));
}
