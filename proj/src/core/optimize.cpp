#include "optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "linalg.hpp"
#include "rng.hpp"

namespace rgg {

QuadraticFit fit_quadratic(std::span<const double> x, std::span<const double> y) {
    const std::size_t N = x.size();
    if (N != y.size()) throw std::invalid_argument("fit_quadratic: size mismatch");
    if (N < 3) throw std::invalid_argument("fit_quadratic: need at least 3 points");

    QuadraticFit fit;
    fit.n_points = static_cast<int>(N);
    double sx = 0.0;
    for (const double v : x) sx += v;
    fit.mu_x = sx / static_cast<double>(N);
    double sxx = 0.0;
    for (const double v : x) sxx += (v - fit.mu_x) * (v - fit.mu_x);
    fit.sigma_x = std::sqrt(sxx / static_cast<double>(N));
    if (fit.sigma_x <= 0.0) throw std::invalid_argument("fit_quadratic: x values are collinear");

    double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
    double r0 = 0.0, r1 = 0.0, r2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double t = (x[i] - fit.mu_x) / fit.sigma_x;
        const double t2 = t * t;
        s1 += t;
        s2 += t2;
        s3 += t2 * t;
        s4 += t2 * t2;
        r0 += y[i];
        r1 += t * y[i];
        r2 += t2 * y[i];
    }
    const double m[3][3] = {{s4, s3, s2}, {s3, s2, s1}, {s2, s1, static_cast<double>(N)}};
    const double rhs[3] = {r2, r1, r0};
    double theta[3];
    solve3(m, rhs, theta);
    fit.s3_tilde = s3;
    fit.s4_tilde = s4;
    fit.a_tilde = theta[0];
    fit.b_tilde = theta[1];
    fit.c_tilde = theta[2];
    fit.condition_number = condition_number_sym3(m);
    if (fit.a_tilde >= 0.0)
        throw std::runtime_error("fit_quadratic: convex fit, no interior maximum");

    fit.x_max = fit.mu_x - fit.sigma_x * fit.b_tilde / (2.0 * fit.a_tilde);
    fit.y_max = fit.c_tilde - fit.b_tilde * fit.b_tilde / (4.0 * fit.a_tilde);
    fit.rss = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double t = (x[i] - fit.mu_x) / fit.sigma_x;
        const double pred = fit.a_tilde * t * t + fit.b_tilde * t + fit.c_tilde;
        fit.rss += (y[i] - pred) * (y[i] - pred);
    }
    return fit;
}

DeltaErrors delta_method_errors(QuadraticFit& fit, int n_nodes, std::uint64_t L, int N) {
    const int m = pair_count(n_nodes);
    DeltaErrors e;
    e.sigma2_bound = std::ldexp(1.0, m) * (1.0 + m) * (1.0 + m) * static_cast<double>(N) /
                     static_cast<double>(L);

    if (fit.n_points < 3) throw std::invalid_argument("delta_method_errors: fit has no points");
    // Standardized normal matrix: S~_1 = 0 and S~_2 = N by construction.
    const double nN = fit.n_points;
    const double mm[3][3] = {
        {fit.s4_tilde, fit.s3_tilde, nN}, {fit.s3_tilde, nN, 0.0}, {nN, 0.0, nN}};
    Matrix M(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M(i, j) = mm[i][j];
    const Matrix Minv = inverse(M);

    const double a = fit.a_tilde, b = fit.b_tilde;
    const double jx[3] = {fit.sigma_x * b / (2.0 * a * a), -fit.sigma_x / (2.0 * a), 0.0};
    const double jy[3] = {b * b / (4.0 * a * a), -b / (2.0 * a), 1.0};
    auto quad_form = [&](const double j[3]) {
        double s = 0.0;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) s += j[r] * Minv(r, c) * j[c];
        return s;
    };
    fit.var_x_max = e.sigma2_bound * quad_form(jx);
    fit.var_y_max = e.sigma2_bound * quad_form(jy);
    e.se_x_max = std::sqrt(std::max(fit.var_x_max, 0.0));
    e.se_y_max = std::sqrt(std::max(fit.var_y_max, 0.0));
    return e;
}

Bracket coarse_scan(const EnsembleSpec& spec_template, std::uint64_t L0, std::uint64_t seed,
                    int threads) {
    spec_template.validate();
    const double D = spec_template.geometry.diameter();
    const double step = D / 50.0;
    std::vector<double> grid(51);
    for (int i = 0; i <= 50; ++i) grid[i] = i * step;
    // r0 = 0 for a soft connection model is invalid (scale must be positive);
    // entropy there is 0 anyway.
    std::vector<double> h(51, 0.0);
    for (int i = 0; i <= 50; ++i) {
        if (grid[i] <= 0.0 && spec_template.connection.kind == ConnectionModel::Kind::Rayleigh)
            continue;
        const EnsembleSpec spec = spec_template.with_r0(std::max(grid[i], 1e-12));
        const auto counts = sample_counts(spec, L0, derive_seed(seed, 1000 + i), threads);
        h[i] = estimate_entropy(counts, L0).entropy_bits;
    }
    int k = 0;
    for (int i = 1; i <= 50; ++i)
        if (h[i] > h[k]) k = i;

    Bracket b;
    b.coarse_argmax = grid[k];
    b.boundary_warning = (k == 0 || k == 50);
    // I_k = [k step, (k+1) step]; take the union with both neighbours and
    // widen toward the interior when the argmax sits on the boundary.
    const double lo = (k - 1) * step;
    const double hi = (k + 2) * step;
    b.lo = std::max(0.0, lo);
    b.hi = std::min(D, hi);
    if (b.boundary_warning) {
        if (k == 0) b.hi = std::min(D, 3.0 * step);
        if (k == 50) b.lo = std::max(0.0, D - 3.0 * step);
    }
    return b;
}

namespace {

OptimizeResult refine_once(const EnsembleSpec& spec_template, const Bracket& bracket,
                           std::uint64_t L, int N, std::uint64_t seed, int threads) {
    std::vector<double> grid(N);
    const double lo = bracket.lo, hi = bracket.hi;
    for (int i = 0; i < N; ++i)
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(N - 1);
    if (grid.front() <= 0.0 && spec_template.connection.kind == ConnectionModel::Kind::Rayleigh)
        grid.front() = 1e-9;

    OptimizeResult res;
    res.bracket = bracket;
    res.grid = entropy_curve(spec_template, grid, L, derive_seed(seed, 7), threads);
    std::vector<double> xs(N), ys(N);
    for (int i = 0; i < N; ++i) {
        xs[i] = res.grid[i].r0;
        ys[i] = res.grid[i].estimate.entropy_bits;
    }
    res.fit = fit_quadratic(xs, ys);
    const DeltaErrors de = delta_method_errors(res.fit, spec_template.n, L, N);
    res.r0_hat = res.fit.x_max;
    res.h_max = res.fit.y_max;
    res.se_r0 = de.se_x_max;
    res.se_h = de.se_y_max;
    return res;
}

}  // namespace

OptimizeResult optimize_r0(const EnsembleSpec& spec_template, std::uint64_t L, int N,
                           std::uint64_t seed, int threads) {
    if (N < 3) throw std::invalid_argument("optimize_r0: grid size must be >= 3");
    const std::uint64_t L0 = std::min<std::uint64_t>(L, 1'000'000);
    Bracket bracket = coarse_scan(spec_template, L0, seed, threads);
    OptimizeResult res = refine_once(spec_template, bracket, L, N, seed, threads);
    if (res.r0_hat < bracket.lo || res.r0_hat > bracket.hi) {
        // Re-bracket once around the fitted maximizer, then give up.
        const double width = bracket.hi - bracket.lo;
        Bracket again;
        again.lo = std::max(0.0, res.r0_hat - 0.5 * width);
        again.hi = std::min(spec_template.geometry.diameter(), res.r0_hat + 0.5 * width);
        again.coarse_argmax = res.r0_hat;
        again.boundary_warning = true;
        res = refine_once(spec_template, again, L, N, derive_seed(seed, 99), threads);
        res.rebracketed = true;
        if (res.r0_hat < again.lo || res.r0_hat > again.hi)
            throw std::runtime_error("optimize_r0: fitted maximizer escaped the bracket twice");
    }

    // p-bar at the maximizer: quadrature when the coordinate law is uniform
    // in d <= 3, otherwise the MC edge marginal at the same sample budget.
    const EnsembleSpec at_max = spec_template.with_r0(res.r0_hat);
    if (spec_template.dist.kind() == CoordinateDistribution::Kind::Uniform &&
        spec_template.geometry.dimension <= 3) {
        res.p_bar_max = pbar_quadrature(at_max.geometry, at_max.connection);
    } else {
        const auto hist = sample_edge_count_histogram(at_max, L0, derive_seed(seed, 13), threads);
        double edges = 0.0, total = 0.0;
        for (std::size_t k = 0; k < hist.size(); ++k) {
            edges += static_cast<double>(k) * static_cast<double>(hist[k]);
            total += static_cast<double>(hist[k]);
        }
        res.p_bar_max = edges / (total * pair_count(spec_template.n));
    }
    return res;
}

}  // namespace rgg
