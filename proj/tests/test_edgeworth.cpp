#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <vector>

#include "edgeworth.hpp"
#include "mc_entropy.hpp"
#include "rng.hpp"

using namespace rgg;

namespace {
const CoordinateDistribution kUniform = CoordinateDistribution::uniform();

// Unnormalized multivariate normal density; the normalization cancels in the
// Hermite defining identity.
double phi_tilde(const Matrix& sinv, const std::vector<double>& q) {
    const std::size_t m = sinv.size();
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) s += q[i] * sinv(i, j) * q[j];
    return std::exp(-0.5 * s);
}

// (-1)^3 d^3 phi / phi by composing central differences along dims[0..2].
double hermite_fd(const Matrix& sinv, const std::vector<double>& q, const std::vector<int>& dims,
                  double h) {
    std::function<double(std::vector<double>&, std::size_t)> rec =
        [&](std::vector<double>& point, std::size_t level) -> double {
        if (level == dims.size()) return phi_tilde(sinv, point);
        const int dim = dims[level];
        point[dim] += h;
        const double plus = rec(point, level + 1);
        point[dim] -= 2 * h;
        const double minus = rec(point, level + 1);
        point[dim] += h;
        return (plus - minus) / (2 * h);
    };
    std::vector<double> point = q;
    return -rec(point, 0) / phi_tilde(sinv, q);
}
}  // namespace

TEST_CASE("uniform third moments match the closed forms") {
    const ThirdMoments cube = third_moments(GeometryKind::Cube, kUniform);
    CHECK(cube.e1 == doctest::Approx(11.0 / 945.0).epsilon(1e-8));
    CHECK(cube.e2 == doctest::Approx(2.0 / 945.0).epsilon(1e-8));
    CHECK(cube.e3 == doctest::Approx(-1.0 / 216.0).epsilon(1e-8));
    CHECK(cube.e4 == doctest::Approx(1.0 / 3780.0).epsilon(1e-8));
    CHECK(cube.e5 == 0.0);
    CHECK(cube.e6 == 0.0);
    CHECK(cube.e7 == 0.0);
    CHECK(std::fabs(cube.e8) < 1e-9);

    const ThirdMoments torus = third_moments(GeometryKind::Torus, kUniform);
    CHECK(torus.e1 == doctest::Approx(1.0 / 3780.0).epsilon(1e-8));
    CHECK(std::fabs(torus.e2) < 1e-9);
    CHECK(torus.e3 == doctest::Approx(-31.0 / 120960.0).epsilon(1e-7));
    CHECK(std::fabs(torus.e4) < 1e-9);
    CHECK(std::fabs(torus.e8) < 1e-9);
}

TEST_CASE("third-order combo enumeration for n = 4") {
    const auto combos = third_order_combos(4);
    int c1 = 0, c2 = 0, c3 = 0, c4 = 0;
    for (const auto& c : combos) {
        if (c.pattern == 1) ++c1;
        if (c.pattern == 2) ++c2;
        if (c.pattern == 3) ++c3;
        if (c.pattern == 4) ++c4;
    }
    CHECK(c1 == 6);    // one per slot
    CHECK(c2 == 24);   // 6 slots x 4 sharing partners
    CHECK(c3 == 4);    // triangles of K4
    CHECK(c4 == 4);    // stars, one per hub node
    for (const auto& c : combos) {
        if (c.pattern == 1) CHECK(c.coeff == 1.0);
        if (c.pattern == 2) CHECK(c.coeff == 3.0);
        if (c.pattern >= 3) CHECK(c.coeff == 6.0);
    }
}

TEST_CASE("precision inverse satisfies its invariant") {
    const EdgeworthModel model = make_edgeworth_model(GeometryKind::Cube, kUniform, 4);
    CHECK(inverse_residual(model.sigma, model.precision_inverse) < 1e-10);
}

TEST_CASE("hermite values at the origin and for diagonal covariance") {
    const EdgeworthModel torus = make_edgeworth_model(GeometryKind::Torus, kUniform, 4);
    std::vector<double> zero(6, 0.0);
    const int s0 = 0, s1 = 1, s2 = 2;
    CHECK(hermite_value(torus, HermiteConfig::H1, zero, std::vector<int>{s0}) == 0.0);
    CHECK(hermite_value(torus, HermiteConfig::H3, zero, std::vector<int>{s0, s1, s2}) == 0.0);

    // Sigma = alpha I: H1(q) = (q/alpha)^3 - 3 (q/alpha)(1/alpha)
    const double alpha = torus.base.alpha;
    std::vector<double> q(6, 0.0);
    q[0] = 0.07;
    const double z = q[0] / alpha;
    CHECK(hermite_value(torus, HermiteConfig::H1, q, std::vector<int>{s0}) ==
          doctest::Approx(z * z * z - 3.0 * z / alpha).epsilon(1e-12));
}

TEST_CASE("hermite values match the numerical-differentiation oracle") {
    const EdgeworthModel model = make_edgeworth_model(GeometryKind::Cube, kUniform, 4);
    const double scale = std::sqrt(model.base.alpha);
    PhiloxStream rng(1212, 0);
    const double h = 3e-4;
    for (int rep = 0; rep < 12; ++rep) {
        std::vector<double> q(6);
        for (double& v : q) v = scale * (rng.next_double() * 2.0 - 1.0);
        // H1 on slot 0; H2 on (0,1); H3 on a triangle; H4 on a star
        struct Case {
            HermiteConfig cfg;
            std::vector<int> slots;
            std::vector<int> dims;
        };
        const std::vector<Case> cases = {
            {HermiteConfig::H1, {0}, {0, 0, 0}},
            {HermiteConfig::H2, {0, 1}, {0, 0, 1}},
            {HermiteConfig::H3, {0, 3, 1}, {0, 3, 1}},  // (0,1),(1,2),(0,2): triangle
            {HermiteConfig::H4, {0, 1, 2}, {0, 1, 2}},  // slots at node 0: star
        };
        for (const auto& c : cases) {
            const double hv = hermite_value(model, c.cfg, q, c.slots);
            const double fd = hermite_fd(model.precision_inverse, q, c.dims, h);
            CHECK(std::fabs(hv - fd) < 1e-4 * std::max(1.0, std::fabs(fd)));
        }
    }
}

TEST_CASE("hermite input validation") {
    const EdgeworthModel model = make_edgeworth_model(GeometryKind::Cube, kUniform, 3);
    std::vector<double> q(5, 0.0);
    CHECK_THROWS_AS(static_cast<void>(
                        hermite_value(model, HermiteConfig::H1, q, std::vector<int>{0})),
                    std::invalid_argument);
    std::vector<double> q3(3, 0.0);
    CHECK_THROWS_AS(static_cast<void>(
                        hermite_value(model, HermiteConfig::H3, q3, std::vector<int>{0, 1})),
                    std::invalid_argument);
}

TEST_CASE("large d reduces the correction to the gaussian limit") {
    const EdgeworthModel model = make_edgeworth_model(GeometryKind::Cube, kUniform, 3);
    const GraphDistribution ew = edgeworth_distribution(model, 0.0, 4'000'000, 500'000, 404);
    LimitOptions opt;
    opt.samples = 500'000;
    opt.seed = 404;
    opt.force_mc = true;
    const GraphDistribution gl = gaussian_limit_distribution(model.base, 3, 0.0, opt);
    for (std::uint64_t g = 0; g < 8; ++g)
        CHECK(ew.probs[g] == doctest::Approx(gl.probs[g]).epsilon(5e-3));
}

TEST_CASE("correction integrates to approximately zero") {
    const EdgeworthModel model = make_edgeworth_model(GeometryKind::Cube, kUniform, 4);
    const GraphDistribution d = edgeworth_distribution(model, 0.0, 15, 1'000'000, 99);
    // Hermite orthogonality: E[1 + correction] = 1, so the raw total should
    // sit within MC noise of 1.
    CHECK(std::fabs(d.pre_normalization_deficit) < 2e-3);
}

TEST_CASE("edgeworth entropy tracks the simulated entropy at d = 15") {
    const EdgeworthModel model = make_edgeworth_model(GeometryKind::Cube, kUniform, 4);
    const int d = 15;
    const GraphDistribution ew = edgeworth_distribution(model, 0.0, d, 2'000'000, 1001);

    EnsembleSpec spec;
    spec.geometry = {GeometryKind::Cube, d};
    spec.n = 4;
    spec.connection = ConnectionModel::hard(r0_for_t(model.base, 0.0, d));
    const std::uint64_t L = 2'000'000;
    const auto counts = sample_counts(spec, L, 909);
    const EntropyEstimate sim = estimate_entropy(counts, L);

    CHECK(std::fabs(ew.entropy_bits - sim.entropy_bits) < 0.015);
    // and the uncorrected gaussian limit is visibly worse at d = 15
    LimitOptions opt;
    opt.samples = 2'000'000;
    opt.seed = 11;
    const GraphDistribution gl = gaussian_limit_distribution(model.base, 4, 0.0, opt);
    CHECK(std::fabs(gl.entropy_bits - sim.entropy_bits) >
          std::fabs(ew.entropy_bits - sim.entropy_bits));
}

TEST_CASE("edgeworth distribution is deterministic across thread counts") {
    const EdgeworthModel model = make_edgeworth_model(GeometryKind::Torus, kUniform, 3);
    const GraphDistribution a = edgeworth_distribution(model, 0.0, 20, 200'000, 37, 1);
    const GraphDistribution b = edgeworth_distribution(model, 0.0, 20, 200'000, 37, 4);
    CHECK(a.probs == b.probs);
}

TEST_CASE("dimension fit on synthetic data") {
    // exact line in d^-1/2: H = 6 - 0.5 d^-1/2
    std::vector<DimensionPoint> pts;
    for (int d : {9, 16, 25, 49, 100, 400})
        pts.push_back({d, 6.0 - 0.5 / std::sqrt(static_cast<double>(d)), 0.0});
    const DimensionFit fit = fit_dimension_curve(pts);
    CHECK(fit.a == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(fit.b == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(fit.c == 0.0);

    // constant curve fits with b ~ 0
    std::vector<DimensionPoint> flat;
    for (int d : {9, 16, 25, 49}) flat.push_back({d, 5.5, 0.0});
    CHECK(std::fabs(fit_dimension_curve(flat).b) < 1e-12);

    CHECK_THROWS_AS(static_cast<void>(fit_dimension_curve({{4, 1.0, 0.0}, {9, 1.0, 0.0}})),
                    std::invalid_argument);
}

TEST_CASE("cube e1 cross-checked by direct pair MC") {
    // independent route: average (|X-Y|^2 - mu)^3 over raw uniform pairs
    PhiloxStream rng(606060, 0);
    const std::uint64_t N = 10'000'000;
    double acc = 0.0;
    for (std::uint64_t i = 0; i < N; ++i) {
        const double d = rng.next_double() - rng.next_double();
        const double c = d * d - 1.0 / 6.0;
        acc += c * c * c;
    }
    const double mc = acc / static_cast<double>(N);
    const ThirdMoments tm = third_moments(GeometryKind::Cube, CoordinateDistribution::uniform());
    CHECK(mc == doctest::Approx(tm.e1).epsilon(5e-3));
}

TEST_CASE("cube uniform n = 4 fitted asymptote sits strictly below the maximum") {
    const std::vector<int> grid = {16, 25, 49, 100, 225};
    const auto [pts, fit] =
        entropy_vs_dimension(GeometryKind::Cube, kUniform, 4, 0.0, grid, 400'000, 11);
    CHECK(pts.size() == 5);
    CHECK(fit.a < 6.0 - 3.0 * fit.se_a);
}

TEST_CASE("torus uniform n = 4 fit extrapolates to the maximum entropy") {
    const std::vector<int> grid = {16, 25, 49, 100, 225};
    const auto [pts, fit] =
        entropy_vs_dimension(GeometryKind::Torus, kUniform, 4, 0.0, grid, 400'000, 2024);
    CHECK(pts.size() == 5);
    CHECK(std::fabs(fit.a - 6.0) < 0.05);
    for (const auto& p : pts) CHECK(p.entropy_bits < 6.0 + 0.01);
}

TEST_CASE("discrete coordinate laws are rejected") {
    CHECK_THROWS_AS(
        static_cast<void>(third_moments(GeometryKind::Cube, CoordinateDistribution::bernoulli(0.5))),
        std::invalid_argument);
}
