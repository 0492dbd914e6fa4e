#pragma once

#include "netdiv/graph.hpp"
#include "netdiv/subgraph_spec.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace netdiv {

Count count_triangles(const Graph& g);

// 3 T / sum_v d_v(d_v-1)/2; nullopt when the graph has no connected triple.
std::optional<double> global_clustering(const Graph& g);

// Counts aligned with the family order.
//  k4:          4-cliques
//  diag_square: induced 4-node, 5-edge subgraphs
//  triangle:    triangles with no outside node adjacent to two of their corners
//  square:      induced 4-cycles
//  pentagon:    induced 5-cycles
// Throws CapabilityError for any other family.
struct SubgraphCensus {
    std::vector<Count> counts;
};

SubgraphCensus subgraph_census(const Graph& g, const SubgraphFamily& family);

struct BetweennessSummary {
    std::vector<double> per_node;  // unnormalized, each unordered pair counted once
    double dispersion = 0.0;       // population standard deviation across nodes
};

BetweennessSummary betweenness(const Graph& g);

// Welford accumulator; variance() is the population variance.
class RunningVariance {
public:
    void push(double x);
    void merge(const RunningVariance& other);

    std::uint64_t count() const noexcept { return count_; }
    double mean() const noexcept { return mean_; }
    double variance() const noexcept { return count_ ? m2_ / static_cast<double>(count_) : 0.0; }

    static RunningVariance restore(std::uint64_t count, double mean, double variance);

private:
    std::uint64_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

enum class InterestingnessMode {
    Dispersion,   // one sample per network: stddev of node betweenness
    PooledNodes,  // every node's betweenness is a sample
};

RunningVariance interestingness_update(RunningVariance running, const BetweennessSummary& summary,
                                       InterestingnessMode mode = InterestingnessMode::Dispersion);

}  // namespace netdiv
