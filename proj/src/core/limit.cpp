#include "limit.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "mc_entropy.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "rng.hpp"

namespace rgg {

namespace {

double sq(double x) { return x * x; }

double torus_h(double x, double y) {
    const double d = std::fabs(x - y);
    const double m = std::min(d, 1.0 - d);
    return m * m;
}

std::vector<double> torus_breaks(double y) {
    std::vector<double> b;
    if (y - 0.5 > 0.0) b.push_back(y - 0.5);
    if (y + 0.5 < 1.0) b.push_back(y + 0.5);
    return b;
}

}  // namespace

CovarianceModel covariance_model(GeometryKind kind, const CoordinateDistribution& dist) {
    CovarianceModel m;
    m.geometry_kind = kind;
    m.gamma = 0.0;

    if (kind == GeometryKind::Cube) {
        // Closed forms in the coordinate central moments.
        const double var = dist.variance();
        const double m4 = dist.central_moment(4);
        m.mu = 2.0 * var;
        m.alpha = 2.0 * (m4 + var * var);
        m.beta = m4 - var * var;
        return m;
    }

    if (dist.is_discrete()) {
        // Bernoulli coordinates: 0 and 1 coincide on the torus, so every
        // pairwise distance is 0 and the model is degenerate.
        m.mu = m.alpha = m.beta = 0.0;
        return m;
    }

    auto pi = [&](double x) { return dist.pdf(x); };
    m.mu = integrate_checked(
        [&](double y) {
            return pi(y) * integrate_checked([&](double x) { return pi(x) * torus_h(x, y); }, 0.0,
                                             1.0, 1e-13, torus_breaks(y));
        },
        0.0, 1.0, 1e-12);
    const double mu = m.mu;
    m.alpha = integrate_checked(
        [&](double y) {
            return pi(y) * integrate_checked(
                               [&](double x) { return pi(x) * sq(torus_h(x, y) - mu); }, 0.0, 1.0,
                               1e-13, torus_breaks(y));
        },
        0.0, 1.0, 1e-12);
    // beta = Var_Y( E_X[h(X,Y)] ): the covariance of squared distances that
    // share one endpoint.
    m.beta = integrate_checked(
        [&](double y) {
            const double g = integrate_checked([&](double x) { return pi(x) * torus_h(x, y); },
                                               0.0, 1.0, 1e-13, torus_breaks(y));
            return pi(y) * sq(g - mu);
        },
        0.0, 1.0, 1e-12);
    return m;
}

double kurtosis(const CoordinateDistribution& dist) {
    const double var = dist.variance();
    if (var <= 1e-14) throw std::domain_error("kurtosis: coordinate law is almost surely constant");
    return dist.central_moment(4) / (var * var);
}

ErDiagnostics converges_to_er(GeometryKind kind, const CoordinateDistribution& dist) {
    const CovarianceModel m = covariance_model(kind, dist);
    ErDiagnostics d;
    d.beta = m.beta;
    d.kurtosis = kurtosis(dist);
    d.converges = std::fabs(m.beta) < 1e-9;
    return d;
}

double normalised_range(const CovarianceModel& model, double r0, int d) {
    if (r0 < 0.0 || d < 1) throw std::invalid_argument("normalised_range: need r0 >= 0, d >= 1");
    const double sd = std::sqrt(static_cast<double>(d));
    return r0 * r0 / sd - model.mu * sd;
}

double r0_for_t(const CovarianceModel& model, double t, int d) {
    if (d < 1) throw std::invalid_argument("r0_for_t: d must be >= 1");
    const double sd = std::sqrt(static_cast<double>(d));
    const double r0sq = model.mu * d + t * sd;
    if (r0sq < 0.0) throw std::domain_error("r0_for_t: mu*d + t*sqrt(d) < 0, no valid radius");
    return std::sqrt(r0sq);
}

Matrix assemble_covariance(const CovarianceModel& model, int n) {
    const int m = pair_count(n);
    Matrix s(m);
    for (int a = 0; a < m; ++a) {
        int ai, aj;
        slot_nodes(n, a, ai, aj);
        for (int b = 0; b < m; ++b) {
            int bi, bj;
            slot_nodes(n, b, bi, bj);
            if (a == b) {
                s(a, b) = model.alpha;
            } else {
                const int common = (ai == bi) + (ai == bj) + (aj == bi) + (aj == bj);
                s(a, b) = common == 1 ? model.beta : model.gamma;
            }
        }
    }
    return s;
}

double limit_edge_probability(const CovarianceModel& model, double t) {
    if (model.alpha <= 0.0) throw std::domain_error("limit_edge_probability: alpha must be > 0");
    return normal_cdf(t / std::sqrt(model.alpha));
}

GraphDistribution gaussian_limit_distribution(const CovarianceModel& model, int n, double t,
                                              const LimitOptions& opt) {
    if (n < 2 || n > 7)
        throw std::invalid_argument("gaussian_limit_distribution: full vectors need 2 <= n <= 7");
    const int m = pair_count(n);
    GraphDistribution dist;
    dist.n = n;
    dist.method = DistributionMethod::GaussianLimit;

    if (std::fabs(model.beta) < 1e-12 && !opt.force_mc) {
        // beta = 0 decouples the slots: exact product of univariate CDFs.
        const double p = limit_edge_probability(model, t);
        dist.probs.resize(std::size_t(1) << m);
        for (std::uint64_t g = 0; g < dist.size(); ++g) {
            const int k = std::popcount(g);
            dist.probs[g] = std::pow(p, k) * std::pow(1.0 - p, m - k);
        }
        dist.entropy_bits = entropy_bits(dist.probs);
        return dist;
    }

    const Matrix sigma = assemble_covariance(model, n);
    Matrix chol;
    try {
        chol = cholesky(sigma);
    } catch (const std::runtime_error&) {
        throw std::runtime_error(
            "gaussian_limit_distribution: covariance not positive definite "
            "(alpha/beta violate the Johnson-structure PSD constraints)");
    }

    const std::uint64_t M = opt.samples;
    constexpr std::uint64_t kBlock = 1u << 14;
    const std::uint64_t n_blocks = (M + kBlock - 1) / kBlock;
    std::vector<std::uint64_t> counts(std::size_t(1) << m, 0);
    std::mutex merge_mu;
    std::atomic<std::uint64_t> next{0};
    int threads = opt.threads > 0 ? opt.threads : thread_count();
    threads = static_cast<int>(std::min<std::uint64_t>(threads, n_blocks));
    auto worker = [&] {
        std::vector<std::uint64_t> local(counts.size(), 0);
        std::vector<double> x(m), y(m);
        for (;;) {
            const std::uint64_t b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= n_blocks) break;
            PhiloxStream rng(opt.seed, b);
            const std::uint64_t lo = b * kBlock;
            const std::uint64_t hi = std::min(M, lo + kBlock);
            for (std::uint64_t s = lo; s < hi; ++s) {
                for (int i = 0; i < m; ++i) x[i] = rng.next_normal();
                std::uint64_t mask = 0;
                for (int i = 0; i < m; ++i) {
                    double v = 0.0;
                    for (int j = 0; j <= i; ++j) v += chol(i, j) * x[j];
                    if (v <= t) mask |= std::uint64_t(1) << i;
                }
                local[mask] += 1;
            }
        }
        std::lock_guard<std::mutex> lk(merge_mu);
        for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += local[i];
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
    }

    dist.probs.resize(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        dist.probs[i] = static_cast<double>(counts[i]) / static_cast<double>(M);
    const EntropyEstimate est = estimate_entropy(counts, M);
    dist.entropy_bits = est.entropy_bits;
    dist.error = ErrorInfo{est.systematic_error_bits(), est.standard_error_bits()};
    return dist;
}

std::vector<LimitCurvePoint> limit_entropy_curve(const CovarianceModel& model, int n,
                                                 const std::vector<double>& t_grid,
                                                 const LimitOptions& opt) {
    std::vector<LimitCurvePoint> out;
    out.reserve(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        LimitOptions o = opt;
        o.seed = derive_seed(opt.seed, i);
        const GraphDistribution d = gaussian_limit_distribution(model, n, t_grid[i], o);
        out.push_back({t_grid[i], d.entropy_bits, limit_edge_probability(model, t_grid[i])});
    }
    return out;
}

double soft_limit_probability(double eta, double k_scale, const CovarianceModel& model) {
    if (eta <= 0.0) throw std::invalid_argument("soft_limit_probability: eta must be > 0");
    if (k_scale <= 0.0) throw std::invalid_argument("soft_limit_probability: k must be > 0");
    return std::exp(-std::pow(model.mu / k_scale, 0.5 * eta));
}

double soft_k_for_probability(double eta, double target_p, const CovarianceModel& model) {
    if (target_p <= 0.0 || target_p >= 1.0)
        throw std::invalid_argument("soft_k_for_probability: target must be in (0,1)");
    // exp(-(mu/k)^(eta/2)) = p  =>  k = mu / (-ln p)^(2/eta)
    return model.mu / std::pow(-std::log(target_p), 2.0 / eta);
}

double limit_entropy_large_n(const CovarianceModel& model, int n, double t,
                             std::uint64_t graph_samples, std::uint64_t inner_samples,
                             std::uint64_t seed, int threads) {
    const int m = pair_count(n);
    if (std::fabs(model.beta) < 1e-12) {
        const double p = limit_edge_probability(model, t);
        const double h2 = -(p > 0 ? p * std::log2(p) : 0.0) -
                          ((1 - p) > 0 ? (1 - p) * std::log2(1 - p) : 0.0);
        return m * h2;
    }
    if (model.beta < 0.0 || model.alpha - 2.0 * model.beta <= 0.0)
        throw std::runtime_error("limit_entropy_large_n: latent decomposition needs 0 <= 2 beta < alpha");
    const double sb = std::sqrt(model.beta);
    const double su = std::sqrt(model.alpha - 2.0 * model.beta);

    std::vector<int> slot_i(m), slot_j(m);
    for (int s = 0; s < m; ++s) slot_nodes(n, s, slot_i[s], slot_j[s]);

    std::vector<double> log2p(graph_samples);
    parallel_blocks(
        graph_samples,
        [&](std::uint64_t g) {
            PhiloxStream rng(seed, g);
            // sample one graph through the latent decomposition
            std::vector<double> v(n);
            for (int i = 0; i < n; ++i) v[i] = rng.next_normal();
            std::vector<char> bits(m);
            for (int s = 0; s < m; ++s) {
                const double q = sb * (v[slot_i[s]] + v[slot_j[s]]) + su * rng.next_normal();
                bits[s] = q <= t;
            }
            // P(g) = E_V[ prod_s p_s(V)^{x_s} (1-p_s)^{1-x_s} ], log-sum-exp
            double max_lp = -1e300;
            std::vector<double> lps(inner_samples);
            for (std::uint64_t k = 0; k < inner_samples; ++k) {
                for (int i = 0; i < n; ++i) v[i] = rng.next_normal();
                double lp = 0.0;
                for (int s = 0; s < m; ++s) {
                    const double pe = normal_cdf((t - sb * (v[slot_i[s]] + v[slot_j[s]])) / su);
                    const double term = bits[s] ? pe : 1.0 - pe;
                    lp += std::log(std::max(term, 1e-300));
                }
                lps[k] = lp;
                max_lp = std::max(max_lp, lp);
            }
            double acc = 0.0;
            for (const double lp : lps) acc += std::exp(lp - max_lp);
            const double log_p = max_lp + std::log(acc / static_cast<double>(inner_samples));
            log2p[g] = log_p / 0.6931471805599453;
        },
        threads);
    double h = 0.0;
    for (const double lp : log2p) h -= lp;
    return h / static_cast<double>(graph_samples);
}

}  // namespace rgg
