#include "graphs.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace rgg {

void slot_nodes(int n, int slot, int& i, int& j) {
    for (i = 0; i < n - 1; ++i) {
        const int row = n - 1 - i;
        if (slot < row) {
            j = i + 1 + slot;
            return;
        }
        slot -= row;
    }
    throw std::out_of_range("slot_nodes: slot out of range");
}

LabeledGraph::LabeledGraph(int n_, std::uint64_t mask) : n(n_), edges(mask) {
    if (n < 2 || n > kMaxNodes) throw std::invalid_argument("LabeledGraph: n must be in [2,11]");
    if (pair_count(n) < 64 && mask >> pair_count(n))
        throw std::invalid_argument("LabeledGraph: bits set above slot C(n,2)-1");
}

LabeledGraph complement(const LabeledGraph& g) {
    LabeledGraph c = g;
    c.edges = ~g.edges & (g.slot_limit() - 1);
    return c;
}

int edge_count(const LabeledGraph& g) { return std::popcount(g.edges); }

std::uint64_t relabel_mask(int n, std::uint64_t mask, const std::vector<int>& perm) {
    std::uint64_t out = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if ((mask >> edge_slot(n, i, j)) & 1u) {
                const int a = std::min(perm[i], perm[j]);
                const int b = std::max(perm[i], perm[j]);
                out |= std::uint64_t(1) << edge_slot(n, a, b);
            }
        }
    }
    return out;
}

const char* method_name(DistributionMethod m) {
    switch (m) {
        case DistributionMethod::Exact: return "exact";
        case DistributionMethod::MonteCarlo: return "monte_carlo";
        case DistributionMethod::GaussianLimit: return "gaussian_limit";
        case DistributionMethod::Edgeworth: return "edgeworth";
    }
    return "?";
}

double entropy_bits(const std::vector<double>& probs, double* clamped) {
    double h = 0.0, neg = 0.0;
    for (double p : probs) {
        if (p > 0.0)
            h -= p * std::log2(p);
        else if (p < 0.0)
            neg -= p;
    }
    if (clamped) *clamped = neg;
    return h == 0.0 ? 0.0 : h;  // normalize -0
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

EdgeCountMarginals edge_count_marginals(const GraphDistribution& dist) {
    const int m = pair_count(dist.n);
    EdgeCountMarginals out;
    out.unnormalised.assign(m + 1, 0.0);
    if (dist.probs.size() != dist.size())
        throw std::invalid_argument("edge_count_marginals: full probability vector required");
    for (std::uint64_t g = 0; g < dist.size(); ++g)
        out.unnormalised[std::popcount(g)] += dist.probs[g];
    out.normalised.resize(m + 1);
    for (int k = 0; k <= m; ++k) out.normalised[k] = out.unnormalised[k] / binomial(m, k);
    return out;
}

double average_connection_probability(const GraphDistribution& dist) {
    const int m = pair_count(dist.n);
    double s = 0.0;
    for (std::uint64_t g = 0; g < dist.size(); ++g) s += std::popcount(g) * dist.probs[g];
    return s / m;
}

double edge_marginal(const GraphDistribution& dist, int slot) {
    double s = 0.0;
    for (std::uint64_t g = 0; g < dist.size(); ++g)
        if ((g >> slot) & 1u) s += dist.probs[g];
    return s;
}

std::string distribution_to_json(const GraphDistribution& dist) {
    nlohmann::json j;
    j["n"] = dist.n;
    j["method"] = method_name(dist.method);
    j["entropy_bits"] = dist.entropy_bits;
    if (dist.n <= 7 && dist.probs.size() == dist.size()) {
        j["probs"] = dist.probs;
        const EdgeCountMarginals m = edge_count_marginals(dist);
        j["edge_count_unnormalised"] = m.unnormalised;
        j["edge_count_normalised"] = m.normalised;
    }
    if (dist.error) {
        j["error"] = {{"systematic", dist.error->systematic}, {"standard", dist.error->standard}};
    }
    if (dist.method == DistributionMethod::Edgeworth) j["clamped_mass"] = dist.clamped_mass;
    return j.dump(2);
}

}  // namespace rgg
