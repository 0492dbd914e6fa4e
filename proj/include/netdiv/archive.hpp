#pragma once

#include "netdiv/metrics.hpp"
#include "netdiv/subgraph_spec.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace netdiv {

struct Elite {
    NetworkSpec spec;
    double fitness = 0.0;
    double realized_clustering = 0.0;
    // rng_seed handed to realize(); re-running realize with it reproduces the graph.
    std::uint64_t realization_seed = 0;
    double dispersion = 0.0;
    std::vector<Count> census;
};

// A leaf of the archive: the half-open box [lo, lo + side) in every dimension.
struct ArchiveCell {
    std::uint64_t id = 0;
    int depth = 0;
    Count side = 0;
    std::vector<Count> lo;
    std::optional<Elite> elite;
    RunningVariance interestingness;
    std::uint64_t visits = 0;

    bool contains(std::span<const Count> counts) const;
};

// Region of the tiling containing a point, whether or not it was visited.
struct Region {
    std::vector<Count> lo;
    Count side = 0;
    int depth = 0;
    const ArchiveCell* cell = nullptr;  // null for never-visited regions
};

// Sparse hierarchical grid. The root region is the box [0, hi_d] per
// dimension, covered by a grid of initial_side cubes; a refined cube is split
// in half along every dimension (2^n children). Unvisited regions are
// implicit leaves.
class ArchiveTree {
public:
    ArchiveTree(std::vector<Count> root_hi, Count initial_side);

    // Root box per kind: [0, floor(N k / 2 / edges_of_kind)].
    static ArchiveTree for_context(const SubgraphFamily& family, const NetworkContext& ctx, Count initial_side);

    struct Located {
        ArchiveCell* cell = nullptr;
        bool created = false;
    };

    // Unique leaf containing the point, created on first visit. Counts a
    // discovery or a revisit. nullopt when the point is outside the root box.
    std::optional<Located> locate(std::span<const Count> counts);

    // Side-effect free lookup. Throws ContractError outside the root box.
    Region find(std::span<const Count> counts) const;
    bool in_bounds(std::span<const Count> counts) const;

    // Halves a leaf. The elite moves to the child containing it with a fresh
    // accumulator; its siblings stay unvisited. Returns false for side-1 cells.
    bool refine(const ArchiveCell& cell);

    // Visited leaves in deterministic (grid, then child index) order.
    std::vector<const ArchiveCell*> leaves() const;
    // Leaves holding an elite, in the order they first received one.
    const std::vector<ArchiveCell*>& occupied() const noexcept { return occupied_; }
    void note_occupied(ArchiveCell* cell);

    std::size_t dimensions() const noexcept { return root_hi_.size(); }
    const std::vector<Count>& root_hi() const noexcept { return root_hi_; }
    Count initial_side() const noexcept { return initial_side_; }

    std::uint64_t epoch_new() const noexcept { return epoch_new_; }
    std::uint64_t epoch_revisits() const noexcept { return epoch_revisits_; }
    std::uint64_t total_new() const noexcept { return total_new_; }
    std::uint64_t total_revisits() const noexcept { return total_revisits_; }
    void reset_epoch() noexcept { epoch_new_ = epoch_revisits_ = 0; }

    // Mean side length over every leaf of the tiling, visited or not.
    double mean_tiling_side() const;
    std::uint64_t refinements() const noexcept { return refinements_; }

private:
    struct TreeNode {
        ArchiveCell cell;
        bool leaf = true;
        std::vector<std::unique_ptr<TreeNode>> children;  // null: unvisited
    };

    std::vector<Count> top_key(std::span<const Count> counts) const;
    std::size_t child_index(const TreeNode& node, std::span<const Count> counts) const;
    std::vector<Count> child_lo(const TreeNode& node, std::size_t index) const;
    TreeNode* descend_to(const ArchiveCell& cell);
    std::unique_ptr<TreeNode> make_leaf(std::vector<Count> lo, Count side, int depth);

    std::vector<Count> root_hi_;
    Count initial_side_;
    std::map<std::vector<Count>, std::unique_ptr<TreeNode>> top_;
    std::vector<ArchiveCell*> occupied_;
    std::uint64_t next_id_ = 0;
    std::uint64_t epoch_new_ = 0, epoch_revisits_ = 0;
    std::uint64_t total_new_ = 0, total_revisits_ = 0;
    std::uint64_t refinements_ = 0;
    double tiling_leaves_ = 0.0;
    double tiling_side_sum_ = 0.0;
};

// fitness = -|realized clustering - C_target|
double clustering_fitness(double realized, double target);

// Pushes the realization's betweenness summary into the cell accumulator and
// replaces the elite iff the candidate is strictly fitter.
bool offer(ArchiveCell& cell, Elite candidate, const BetweennessSummary& summary,
           InterestingnessMode mode = InterestingnessMode::Dispersion);

struct RefinementPolicy {
    double revisit_threshold = 2.0;
    double refine_fraction = 0.05;
};

// Fires when epoch revisits / max(epoch discoveries, 1) strictly exceeds the
// threshold: splits the most interesting occupied leaves (at least one) and
// resets the epoch. Returns the number of cells split.
std::size_t maybe_refine(ArchiveTree& tree, const RefinementPolicy& policy);

// [side, 2 side]
std::pair<Count, Count> mutation_band(const ArchiveCell& cell);

}  // namespace netdiv
