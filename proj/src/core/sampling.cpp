#include "sampling.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "parallel.hpp"
#include "quadrature.hpp"

namespace rgg {

namespace {
constexpr std::uint64_t kBlockSize = 1u << 14;
}

ConnectionModel ConnectionModel::hard(double r0) {
    if (r0 < 0.0) throw std::invalid_argument("hard connection: r0 must be >= 0");
    ConnectionModel c;
    c.kind = Kind::Hard;
    c.r0 = r0;
    return c;
}

ConnectionModel ConnectionModel::rayleigh(double r0, double eta) {
    if (r0 <= 0.0) throw std::invalid_argument("rayleigh connection: r0 must be > 0");
    if (eta <= 0.0) throw std::invalid_argument("rayleigh connection: eta must be > 0");
    ConnectionModel c;
    c.kind = Kind::Rayleigh;
    c.r0 = r0;
    c.eta = eta;
    return c;
}

double ConnectionModel::probability(double r) const {
    if (kind == Kind::Hard) return r <= r0 ? 1.0 : 0.0;
    return std::exp(-std::pow(r / r0, eta));
}

void EnsembleSpec::validate() const {
    if (n < 2 || n > kMaxNodes) throw std::invalid_argument("spec: n must be in [2,11]");
    if (geometry.dimension < 1) throw std::invalid_argument("spec: dimension must be >= 1");
    if (connection.r0 < 0.0) throw std::invalid_argument("spec: r0 must be >= 0");
}

EnsembleSpec EnsembleSpec::with_r0(double r0) const {
    EnsembleSpec s = *this;
    s.connection.r0 = r0;
    return s;
}

std::uint64_t hard_mask_from_points(const Geometry& g, const std::vector<Point>& pts, double r0) {
    const int n = static_cast<int>(pts.size());
    std::uint64_t mask = 0;
    int slot = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++slot)
            if (distance(g, pts[i], pts[j]) <= r0) mask |= std::uint64_t(1) << slot;
    return mask;
}

LabeledGraph graph_from_points(const EnsembleSpec& spec, const std::vector<Point>& pts,
                               PhiloxStream& rng) {
    const int n = spec.n;
    std::uint64_t mask = 0;
    int slot = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++slot) {
            const double r = distance(spec.geometry, pts[i], pts[j]);
            bool edge;
            if (spec.connection.kind == ConnectionModel::Kind::Hard)
                edge = r <= spec.connection.r0;
            else
                edge = rng.next_double() < spec.connection.probability(r);
            if (edge) mask |= std::uint64_t(1) << slot;
        }
    }
    return LabeledGraph(n, mask);
}

LabeledGraph sample_graph(const EnsembleSpec& spec, PhiloxStream& rng) {
    spec.validate();
    std::vector<Point> pts(spec.n);
    for (int i = 0; i < spec.n; ++i) pts[i] = sample_point(spec.geometry, spec.dist, rng);
    return graph_from_points(spec, pts, rng);
}

namespace {

// Block loop with one count accumulator per worker thread. Integer merges
// commute, so results are bit-identical for any thread count or schedule.
std::vector<std::uint64_t> count_blocks(const EnsembleSpec& spec, std::uint64_t L,
                                        std::uint64_t seed, int threads, std::size_t bins,
                                        bool by_edge_count) {
    const std::uint64_t n_blocks = (L + kBlockSize - 1) / kBlockSize;
    std::vector<std::uint64_t> total(bins, 0);
    std::mutex merge_mu;
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        std::vector<std::uint64_t> local(bins, 0);
        std::vector<Point> pts(spec.n, Point(spec.geometry.dimension));
        for (;;) {
            const std::uint64_t b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= n_blocks) break;
            const std::uint64_t lo = b * kBlockSize;
            const std::uint64_t hi = std::min(L, lo + kBlockSize);
            PhiloxStream rng(seed, b);
            for (std::uint64_t s = lo; s < hi; ++s) {
                for (int i = 0; i < spec.n; ++i)
                    for (int k = 0; k < spec.geometry.dimension; ++k)
                        pts[i][k] = spec.dist.sample(rng);
                const LabeledGraph g = graph_from_points(spec, pts, rng);
                local[by_edge_count ? static_cast<std::size_t>(edge_count(g))
                                    : static_cast<std::size_t>(g.edges)] += 1;
            }
        }
        std::lock_guard<std::mutex> lk(merge_mu);
        for (std::size_t i = 0; i < bins; ++i) total[i] += local[i];
    };
    if (threads <= 0) threads = thread_count();
    threads = static_cast<int>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(n_blocks, 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads - 1);
        for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
    }
    return total;
}

}  // namespace

std::vector<std::uint64_t> sample_counts(const EnsembleSpec& spec, std::uint64_t L,
                                         std::uint64_t seed, int threads) {
    spec.validate();
    if (spec.n > 7)
        throw std::invalid_argument(
            "sample_counts: full count vectors are limited to n <= 7; "
            "use sample_edge_count_histogram for larger n");
    return count_blocks(spec, L, seed, threads, std::size_t(1) << pair_count(spec.n), false);
}

std::vector<std::uint64_t> sample_edge_count_histogram(const EnsembleSpec& spec, std::uint64_t L,
                                                       std::uint64_t seed, int threads) {
    spec.validate();
    return count_blocks(spec, L, seed, threads, pair_count(spec.n) + 1, true);
}

namespace {

// Coordinate-distance density/CDF for uniform coordinates.
double f1(const Geometry& g, double u) {
    if (g.kind == GeometryKind::Torus) return u <= 0.5 ? 2.0 : 0.0;
    return u <= 1.0 ? 2.0 * (1.0 - u) : 0.0;
}

double F1(const Geometry& g, double u) {
    if (g.kind == GeometryKind::Torus) return u >= 0.5 ? 1.0 : 2.0 * u;
    return u >= 1.0 ? 1.0 : u * (2.0 - u);
}

double coord_max(const Geometry& g) { return g.kind == GeometryKind::Torus ? 0.5 : 1.0; }

}  // namespace

double pbar_quadrature(const Geometry& g, const ConnectionModel& c) {
    if (g.dimension > 3)
        throw std::invalid_argument("pbar_quadrature: implemented for dimension <= 3");
    const double umax = coord_max(g);
    const double r0 = c.r0;

    if (c.kind == ConnectionModel::Kind::Hard) {
        // P(sum u_k^2 <= r0^2): innermost coordinate integrated via F1.
        if (g.dimension == 1) return F1(g, std::min(r0, umax));
        auto tail = [&](double s2) {  // P(u^2 <= s2)
            if (s2 <= 0.0) return 0.0;
            return F1(g, std::min(std::sqrt(s2), umax));
        };
        if (g.dimension == 2) {
            return integrate_checked(
                [&](double u1) { return f1(g, u1) * tail(r0 * r0 - u1 * u1); }, 0.0, umax, 1e-11,
                {r0, std::sqrt(std::max(0.0, r0 * r0 - umax * umax))});
        }
        return integrate_checked(
            [&](double u1) {
                const double rem1 = r0 * r0 - u1 * u1;
                if (rem1 <= 0.0) return 0.0;
                const double inner = integrate_checked(
                    [&](double u2) { return f1(g, u2) * tail(rem1 - u2 * u2); }, 0.0, umax, 1e-12,
                    {std::sqrt(rem1), std::sqrt(std::max(0.0, rem1 - umax * umax))});
                return f1(g, u1) * inner;
            },
            0.0, umax, 1e-10, {r0, std::sqrt(std::max(0.0, r0 * r0 - umax * umax))});
    }

    // Soft: E[p(rho / r0)], smooth integrand.
    auto p_of_r2 = [&](double r2) { return c.probability(std::sqrt(r2)); };
    if (g.dimension == 1)
        return integrate_checked([&](double u) { return f1(g, u) * p_of_r2(u * u); }, 0.0, umax,
                                 1e-11);
    if (g.dimension == 2)
        return integrate_checked(
            [&](double u1) {
                return f1(g, u1) * integrate_checked([&](double u2) {
                           return f1(g, u2) * p_of_r2(u1 * u1 + u2 * u2);
                       }, 0.0, umax, 1e-12);
            },
            0.0, umax, 1e-11);
    return integrate_checked(
        [&](double u1) {
            return f1(g, u1) * integrate_checked(
                                   [&](double u2) {
                                       return f1(g, u2) * integrate_checked(
                                                              [&](double u3) {
                                                                  return f1(g, u3) *
                                                                         p_of_r2(u1 * u1 + u2 * u2 +
                                                                                 u3 * u3);
                                                              },
                                                              0.0, umax, 1e-12);
                                   },
                                   0.0, umax, 1e-11);
        },
        0.0, umax, 1e-10);
}

}  // namespace rgg
