#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rgg {

constexpr int kMaxNodes = 11;  // C(11,2) = 55 edge bits

constexpr int pair_count(int n) { return n * (n - 1) / 2; }

// Lexicographic slot of edge (i,j), i<j: (0,1),(0,2),...,(0,n-1),(1,2),...
constexpr int edge_slot(int n, int i, int j) {
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

// Inverse of edge_slot.
void slot_nodes(int n, int slot, int& i, int& j);

// Labelled graph as a bitmask over the C(n,2) lexicographic edge slots.
struct LabeledGraph {
    int n = 2;
    std::uint64_t edges = 0;

    LabeledGraph() = default;
    LabeledGraph(int n_, std::uint64_t mask);

    bool has_edge(int i, int j) const { return (edges >> edge_slot(n, i, j)) & 1u; }
    std::uint64_t slot_limit() const { return std::uint64_t(1) << pair_count(n); }
};

LabeledGraph complement(const LabeledGraph& g);
int edge_count(const LabeledGraph& g);

// Mask of the graph with nodes relabelled by perm (perm[v] = new label of v).
std::uint64_t relabel_mask(int n, std::uint64_t mask, const std::vector<int>& perm);

enum class DistributionMethod { Exact, MonteCarlo, GaussianLimit, Edgeworth };

const char* method_name(DistributionMethod m);

struct ErrorInfo {
    double systematic = 0.0;  // bits
    double standard = 0.0;    // bits
};

// Probability vector over all 2^C(n,2) labelled graphs, indexed by bitmask.
struct GraphDistribution {
    int n = 2;
    DistributionMethod method = DistributionMethod::Exact;
    std::vector<double> probs;
    double entropy_bits = 0.0;
    std::optional<ErrorInfo> error;
    double clamped_mass = 0.0;             // Edgeworth: total negative mass removed
    double pre_normalization_deficit = 0.0;  // Edgeworth: 1 - sum(raw probs)

    std::uint64_t size() const { return std::uint64_t(1) << pair_count(n); }
};

// -sum p log2 p with 0 log 0 := 0; negative entries are treated as 0 and
// their magnitude accumulated into *clamped when given.
double entropy_bits(const std::vector<double>& probs, double* clamped = nullptr);

struct EdgeCountMarginals {
    std::vector<double> unnormalised;  // P(|E(g)| = k)
    std::vector<double> normalised;    // per-graph: unnormalised[k] / C(m,k)
};

EdgeCountMarginals edge_count_marginals(const GraphDistribution& dist);

// Mean edge probability sum_g |E(g)| P(g) / C(n,2).
double average_connection_probability(const GraphDistribution& dist);

// Marginal probability that a specific slot's edge is present.
double edge_marginal(const GraphDistribution& dist, int slot);

double binomial(int n, int k);

std::string distribution_to_json(const GraphDistribution& dist);

}  // namespace rgg
