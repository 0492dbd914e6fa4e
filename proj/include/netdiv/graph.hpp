#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace netdiv {

using Node = std::uint32_t;
using Edge = std::pair<Node, Node>;

// Simple undirected graph on dense 0-based node ids. Neighbor lists are kept
// sorted so lookups are O(log k) and iteration order is deterministic.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : adjacency_(n) {}

    std::size_t node_count() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edges_; }

    // Returns true if a new edge was inserted, false if {u,v} already existed.
    // Throws IndexError for out-of-range ids and ContractError for u == v.
    bool add_edge(Node u, Node v);
    bool remove_edge(Node u, Node v);
    bool has_edge(Node u, Node v) const;

    std::span<const Node> neighbors(Node v) const { return adjacency_.at(v); }
    std::size_t degree(Node v) const { return adjacency_.at(v).size(); }
    std::vector<int> degrees() const;

    // Each undirected edge once, smaller endpoint first, lexicographic order.
    std::vector<Edge> edges() const;

    bool is_regular(std::size_t k) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    void check_index(Node v) const;

    std::vector<std::vector<Node>> adjacency_;
    std::size_t edges_ = 0;
};

// Erdos-Gallai test (with even-sum check). Negative entries are never graphical.
bool is_graphical(std::span<const int> degrees);

// Edge list: one "u v" pair per line, smaller endpoint first. Lines that are
// blank or start with '#' are ignored on input. The node count defaults to
// max id + 1 unless given.
void write_edge_list(const Graph& g, std::ostream& out);
Graph read_edge_list(std::istream& in, std::optional<std::size_t> node_count = std::nullopt);

// File variants; a ".gz" extension selects gzip compression.
void save_edge_list(const Graph& g, const std::filesystem::path& path);
Graph load_edge_list(const std::filesystem::path& path,
                     std::optional<std::size_t> node_count = std::nullopt);

}  // namespace netdiv
