#pragma once

#include "netdiv/graph.hpp"
#include "netdiv/rng.hpp"
#include "netdiv/subgraph_spec.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace netdiv {

struct RealizationConfig {
    int max_attempts = 10;
    // Swap budget for repairing leftover stubs during free-edge completion.
    int max_edge_retries = 2000;
    // Random node-set draws per subgraph placement before settling for the
    // least triangle-closing feasible one.
    int placement_tries = 48;
    // An attempt whose realized clustering exceeds C_target by more than this
    // is discarded and retried.
    double max_clustering_excess = 0.003;
    bool compute_census = true;
    std::uint64_t rng_seed = 0;
};

struct RealizationReport {
    std::optional<Graph> graph;
    int attempts_used = 0;
    double realized_clustering = 0.0;
    // Seed of the successful attempt; realize() with the same spec and config
    // reproduces the graph.
    std::uint64_t attempt_seed = 0;
    // Realized census and (census - spec counts); empty when the census is
    // disabled or unsupported for the family.
    std::vector<Count> census;
    std::vector<Count> by_products;

    bool ok() const noexcept { return graph.has_value(); }
};

// Under-construction state: the graph so far, per-node remaining stubs and
// the free edges added (the only edges the repair step may rewire).
class PartialGraph {
public:
    PartialGraph(std::size_t nodes, int degree);

    const Graph& graph() const noexcept { return graph_; }
    Graph release() && { return std::move(graph_); }
    int stubs(Node v) const { return stubs_.at(v); }
    int degree_target() const noexcept { return degree_; }
    long long total_stubs() const noexcept { return total_stubs_; }
    const std::vector<Edge>& free_edges() const noexcept { return free_edges_; }

    // Adds {u,v}, consuming one stub on each end.
    void connect(Node u, Node v, bool free_edge);
    void disconnect_free(std::size_t free_index);

    // Marks stubs as already used; for tests that start from a custom state.
    void set_stubs(Node v, int remaining);

private:
    Graph graph_;
    std::vector<int> stubs_;
    int degree_ = 0;
    long long total_stubs_ = 0;
    std::vector<Edge> free_edges_;
};

// Picks kind.nodes distinct nodes with enough stubs for their roles, no
// existing edge between any two of them, preferring placements whose new
// edges close no triangle with existing edges. Installs the kind's pattern.
bool place_subgraph(PartialGraph& partial, const SubgraphKind& kind, Rng& rng, int tries = 48);

// Pairs all remaining stubs into simple edges, preferring pairs without a
// common neighbor, and repairs leftovers by swapping them into existing free
// edges.
bool fill_free_edges(PartialGraph& partial, Rng& rng, int max_edge_retries = 2000);

// Throws ContractError if the spec does not validate.
RealizationReport realize(const SubgraphFamily& family, const NetworkSpec& spec, const RealizationConfig& cfg);

}  // namespace netdiv
