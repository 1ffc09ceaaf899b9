#include "edgeworth.hpp"

#include <algorithm>
#include <atomic>
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

double cube_h(double x, double y) { return (x - y) * (x - y); }

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

struct HFun {
    GeometryKind kind;
    double operator()(double x, double y) const {
        return kind == GeometryKind::Cube ? cube_h(x, y) : torus_h(x, y);
    }
    std::vector<double> breaks(double y) const {
        return kind == GeometryKind::Cube ? std::vector<double>{} : torus_breaks(y);
    }
};

}  // namespace

ThirdMoments third_moments(GeometryKind kind, const CoordinateDistribution& dist) {
    if (dist.is_discrete())
        throw std::invalid_argument("third_moments: continuous coordinate law required");
    const CovarianceModel base = covariance_model(kind, dist);
    const double mu = base.mu;
    const HFun h{kind};
    auto pi = [&](double x) { return dist.pdf(x); };

    // Conditional moments of q given one endpoint.
    auto v1 = [&](double x) {
        return integrate_checked([&](double y) { return pi(y) * (h(x, y) - mu); }, 0.0, 1.0, 1e-12,
                                 h.breaks(x));
    };
    auto v2 = [&](double x) {
        return integrate_checked(
            [&](double y) {
                const double c = h(x, y) - mu;
                return pi(y) * c * c;
            },
            0.0, 1.0, 1e-12, h.breaks(x));
    };

    ThirdMoments tm;
    tm.e1 = integrate_checked(
        [&](double y) {
            return pi(y) * integrate_checked(
                               [&](double x) {
                                   const double c = h(x, y) - mu;
                                   return pi(x) * c * c * c;
                               },
                               0.0, 1.0, 1e-12, h.breaks(y));
        },
        0.0, 1.0, 1e-11);
    tm.e2 = integrate_checked([&](double x) { return pi(x) * v2(x) * v1(x); }, 0.0, 1.0, 1e-11);
    tm.e3 = integrate_checked(
        [&](double x) {
            return pi(x) * integrate_checked(
                               [&](double y) {
                                   return pi(y) * (h(x, y) - mu) *
                                          integrate_checked(
                                              [&](double z) {
                                                  return pi(z) * (h(y, z) - mu) * (h(z, x) - mu);
                                              },
                                              0.0, 1.0, 1e-12,
                                              [&] {
                                                  std::vector<double> b = h.breaks(x);
                                                  for (double v : h.breaks(y)) b.push_back(v);
                                                  return b;
                                              }());
                               },
                               0.0, 1.0, 1e-11, h.breaks(x));
        },
        0.0, 1.0, 1e-10);
    tm.e4 = integrate_checked(
        [&](double x) {
            const double g = v1(x);
            return pi(x) * g * g * g;
        },
        0.0, 1.0, 1e-11);
    tm.e5 = tm.e6 = tm.e7 = 0.0;  // contain an independent mean-zero factor
    tm.e8 = integrate_checked(
        [&](double y) {
            return pi(y) * v1(y) *
                   integrate_checked(
                       [&](double z) { return pi(z) * (h(y, z) - mu) * v1(z); }, 0.0, 1.0, 1e-12,
                       h.breaks(y));
        },
        0.0, 1.0, 1e-10);
    return tm;
}

EdgeworthModel make_edgeworth_model(GeometryKind kind, const CoordinateDistribution& dist, int n) {
    EdgeworthModel m;
    m.base = covariance_model(kind, dist);
    m.moments = third_moments(kind, dist);
    m.n = n;
    m.sigma = assemble_covariance(m.base, n);
    m.precision_inverse = inverse(m.sigma);
    if (inverse_residual(m.sigma, m.precision_inverse) > 1e-10)
        throw std::runtime_error("make_edgeworth_model: precision inverse residual too large");
    return m;
}

namespace {

// H_{abc}(q) = z_a z_b z_c - z_a S^-1_bc - z_b S^-1_ac - z_c S^-1_ab, z = S^-1 q.
double hermite_triple(const Matrix& sinv, std::span<const double> z, int a, int b, int c) {
    return z[a] * z[b] * z[c] - z[a] * sinv(b, c) - z[b] * sinv(a, c) - z[c] * sinv(a, b);
}

int overlap(int n, int sa, int sb) {
    int ai, aj, bi, bj;
    slot_nodes(n, sa, ai, aj);
    slot_nodes(n, sb, bi, bj);
    return (ai == bi) + (ai == bj) + (aj == bi) + (aj == bj);
}

}  // namespace

std::vector<SlotCombo> third_order_combos(int n) {
    const int m = pair_count(n);
    std::vector<SlotCombo> out;
    // q_a^3
    for (int a = 0; a < m; ++a) out.push_back({a, a, a, 1.0, 1});
    // q_a^2 q_b: only shared-node pairs survive (disjoint is e6 = 0)
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (a != b && overlap(n, a, b) == 1) out.push_back({a, a, b, 3.0, 2});
    // distinct triples: triangles (e3) and stars (e4) survive
    for (int a = 0; a < m; ++a) {
        int ai, aj;
        slot_nodes(n, a, ai, aj);
        for (int b = a + 1; b < m; ++b) {
            int bi, bj;
            slot_nodes(n, b, bi, bj);
            for (int c = b + 1; c < m; ++c) {
                int ci, cj;
                slot_nodes(n, c, ci, cj);
                bool node_used[kMaxNodes] = {};
                int deg[kMaxNodes] = {};
                for (int v : {ai, aj, bi, bj, ci, cj}) {
                    node_used[v] = true;
                    ++deg[v];
                }
                int nodes = 0, maxdeg = 0;
                for (int v = 0; v < n; ++v) {
                    nodes += node_used[v];
                    maxdeg = std::max(maxdeg, deg[v]);
                }
                if (nodes == 3)
                    out.push_back({a, b, c, 6.0, 3});
                else if (nodes == 4 && maxdeg == 3)
                    out.push_back({a, b, c, 6.0, 4});
                // paths (e8), wedges with a disjoint slot (e7) and fully
                // disjoint triples (e5) have vanishing moments
            }
        }
    }
    return out;
}

double hermite_value(const EdgeworthModel& model, HermiteConfig config, std::span<const double> q,
                     std::span<const int> slots) {
    const std::size_t m = model.sigma.size();
    if (q.size() != m) throw std::invalid_argument("hermite_value: q has wrong dimension");
    const std::size_t need = config == HermiteConfig::H1 ? 1 : config == HermiteConfig::H2 ? 2 : 3;
    if (slots.size() != need) throw std::invalid_argument("hermite_value: wrong slot count");
    for (int s : slots)
        if (s < 0 || static_cast<std::size_t>(s) >= m)
            throw std::invalid_argument("hermite_value: slot out of range");
    std::vector<double> z(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) z[i] += model.precision_inverse(i, j) * q[j];
    int a, b, c;
    switch (config) {
        case HermiteConfig::H1: a = b = c = slots[0]; break;
        case HermiteConfig::H2: a = b = slots[0]; c = slots[1]; break;
        default: a = slots[0]; b = slots[1]; c = slots[2]; break;
    }
    return hermite_triple(model.precision_inverse, z, a, b, c);
}

GraphDistribution edgeworth_distribution(const EdgeworthModel& model, double t, int d,
                                         std::uint64_t M, std::uint64_t seed, int threads) {
    if (d < 1) throw std::invalid_argument("edgeworth_distribution: d must be >= 1");
    const int n = model.n;
    const int m = pair_count(n);
    const std::size_t n_graphs = std::size_t(1) << m;

    Matrix chol;
    try {
        chol = cholesky(model.sigma);
    } catch (const std::runtime_error&) {
        throw std::runtime_error("edgeworth_distribution: covariance not positive definite");
    }
    const Matrix& sinv = model.precision_inverse;

    std::vector<SlotCombo> combos = third_order_combos(n);
    const double evals[5] = {0.0, model.moments.e1, model.moments.e2, model.moments.e3,
                             model.moments.e4};
    std::erase_if(combos, [&](const SlotCombo& s) { return evals[s.pattern] == 0.0; });
    const double scale = 1.0 / (6.0 * std::sqrt(static_cast<double>(d)));

    // Per-block weight rows, reduced in block order so the float sums do not
    // depend on the thread count.
    std::uint64_t block = 1u << 14;
    while ((M + block - 1) / block * n_graphs > (std::uint64_t(1) << 23)) block *= 2;
    const std::uint64_t n_blocks = (M + block - 1) / block;
    std::vector<std::vector<double>> partial(n_blocks);
    std::vector<std::vector<std::uint64_t>> partial_counts(n_blocks);

    parallel_blocks(
        n_blocks,
        [&](std::uint64_t bidx) {
            std::vector<double> w(n_graphs, 0.0);
            std::vector<std::uint64_t> cnt(n_graphs, 0);
            std::vector<double> x(m), q(m), z(m);
            PhiloxStream rng(seed, bidx);
            const std::uint64_t lo = bidx * block;
            const std::uint64_t hi = std::min(M, lo + block);
            for (std::uint64_t s = lo; s < hi; ++s) {
                for (int i = 0; i < m; ++i) x[i] = rng.next_normal();
                for (int i = 0; i < m; ++i) {
                    double v = 0.0;
                    for (int j = 0; j <= i; ++j) v += chol(i, j) * x[j];
                    q[i] = v;
                }
                for (int i = 0; i < m; ++i) {
                    double v = 0.0;
                    for (int j = 0; j < m; ++j) v += sinv(i, j) * q[j];
                    z[i] = v;
                }
                double corr = 0.0;
                for (const SlotCombo& cb : combos)
                    corr += cb.coeff * evals[cb.pattern] * hermite_triple(sinv, z, cb.a, cb.b, cb.c);
                std::uint64_t mask = 0;
                for (int i = 0; i < m; ++i)
                    if (q[i] <= t) mask |= std::uint64_t(1) << i;
                w[mask] += 1.0 + scale * corr;
                cnt[mask] += 1;
            }
            partial[bidx] = std::move(w);
            partial_counts[bidx] = std::move(cnt);
        },
        threads);

    std::vector<double> probs(n_graphs, 0.0);
    std::vector<std::uint64_t> counts(n_graphs, 0);
    for (std::uint64_t b = 0; b < n_blocks; ++b) {
        for (std::size_t g = 0; g < n_graphs; ++g) {
            probs[g] += partial[b][g];
            counts[g] += partial_counts[b][g];
        }
    }
    for (double& p : probs) p /= static_cast<double>(M);

    GraphDistribution dist;
    dist.n = n;
    dist.method = DistributionMethod::Edgeworth;
    double total = 0.0;
    for (const double p : probs) total += p;
    dist.pre_normalization_deficit = 1.0 - total;
    double clamped = 0.0;
    for (double& p : probs) {
        if (p < 0.0) {
            clamped -= p;
            p = 0.0;
        }
    }
    double clamped_total = 0.0;
    for (const double p : probs) clamped_total += p;
    for (double& p : probs) p /= clamped_total;
    dist.clamped_mass = clamped;
    dist.probs = std::move(probs);
    dist.entropy_bits = entropy_bits(dist.probs);
    // Sampling-noise scale from the underlying multinomial counts.
    const EntropyEstimate est = estimate_entropy(counts, M);
    dist.error = ErrorInfo{est.systematic_error_bits(), est.standard_error_bits()};
    return dist;
}

DimensionFit fit_dimension_curve(const std::vector<DimensionPoint>& pts) {
    const std::size_t N = pts.size();
    if (N < 3) throw std::invalid_argument("fit_dimension_curve: need at least 3 points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& p : pts) {
        const double x = 1.0 / std::sqrt(static_cast<double>(p.d));
        sx += x;
        sy += p.entropy_bits;
        sxx += x * x;
        sxy += x * p.entropy_bits;
    }
    const double nn = static_cast<double>(N);
    const double sxx_c = sxx - sx * sx / nn;
    if (sxx_c <= 0.0) throw std::invalid_argument("fit_dimension_curve: degenerate d grid");
    const double slope = (sxy - sx * sy / nn) / sxx_c;
    const double intercept = (sy - slope * sx) / nn;
    double rss = 0.0;
    for (const auto& p : pts) {
        const double x = 1.0 / std::sqrt(static_cast<double>(p.d));
        const double r = p.entropy_bits - (intercept + slope * x);
        rss += r * r;
    }
    const double s2 = N > 2 ? rss / (nn - 2.0) : 0.0;
    DimensionFit fit;
    fit.a = intercept;
    fit.b = -slope;
    fit.c = 0.0;
    fit.se_a = std::sqrt(s2 * (1.0 / nn + (sx / nn) * (sx / nn) / sxx_c));
    fit.se_b = std::sqrt(s2 / sxx_c);
    return fit;
}

std::pair<std::vector<DimensionPoint>, DimensionFit> entropy_vs_dimension(
    GeometryKind kind, const CoordinateDistribution& dist, int n, double t,
    const std::vector<int>& d_grid, std::uint64_t M, std::uint64_t seed, int threads) {
    const EdgeworthModel model = make_edgeworth_model(kind, dist, n);
    std::vector<DimensionPoint> pts;
    pts.reserve(d_grid.size());
    for (std::size_t i = 0; i < d_grid.size(); ++i) {
        const GraphDistribution gd =
            edgeworth_distribution(model, t, d_grid[i], M, derive_seed(seed, i), threads);
        pts.push_back({d_grid[i], gd.entropy_bits, gd.clamped_mass});
    }
    return {pts, fit_dimension_curve(pts)};
}

}  // namespace rgg
