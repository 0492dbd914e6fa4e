#include "netdiv/archive.hpp"

#include "netdiv/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace netdiv {

bool ArchiveCell::contains(std::span<const Count> counts) const {
    if (counts.size() != lo.size()) return false;
    for (std::size_t d = 0; d < lo.size(); ++d)
        if (counts[d] < lo[d] || counts[d] >= lo[d] + side) return false;
    return true;
}

ArchiveTree::ArchiveTree(std::vector<Count> root_hi, Count initial_side)
    : root_hi_(std::move(root_hi)), initial_side_(initial_side) {
    if (initial_side_ < 1 || (initial_side_ & (initial_side_ - 1)) != 0) {
        throw ConfigError("initial cell size must be a power of two");
    }
    if (root_hi_.empty()) throw ConfigError("archive needs at least one dimension");
    tiling_leaves_ = 1.0;
    for (Count hi : root_hi_) tiling_leaves_ *= static_cast<double>(hi / initial_side_ + 1);
    tiling_side_sum_ = tiling_leaves_ * static_cast<double>(initial_side_);
}

ArchiveTree ArchiveTree::for_context(const SubgraphFamily& family, const NetworkContext& ctx, Count initial_side) {
    std::vector<Count> hi;
    for (const auto& k : family.kinds()) hi.push_back(ctx.total_edges() / k.edges);
    return ArchiveTree(std::move(hi), initial_side);
}

bool ArchiveTree::in_bounds(std::span<const Count> counts) const {
    if (counts.size() != root_hi_.size()) return false;
    for (std::size_t d = 0; d < counts.size(); ++d)
        if (counts[d] < 0 || counts[d] > root_hi_[d]) return false;
    return true;
}

std::vector<Count> ArchiveTree::top_key(std::span<const Count> counts) const {
    std::vector<Count> key(counts.size());
    for (std::size_t d = 0; d < counts.size(); ++d) key[d] = counts[d] / initial_side_;
    return key;
}

std::size_t ArchiveTree::child_index(const TreeNode& node, std::span<const Count> counts) const {
    const Count half = node.cell.side / 2;
    std::size_t idx = 0;
    for (std::size_t d = 0; d < counts.size(); ++d)
        if (counts[d] >= node.cell.lo[d] + half) idx |= std::size_t{1} << d;
    return idx;
}

std::vector<Count> ArchiveTree::child_lo(const TreeNode& node, std::size_t index) const {
    const Count half = node.cell.side / 2;
    std::vector<Count> lo = node.cell.lo;
    for (std::size_t d = 0; d < lo.size(); ++d)
        if (index >> d & 1) lo[d] += half;
    return lo;
}

std::unique_ptr<ArchiveTree::TreeNode> ArchiveTree::make_leaf(std::vector<Count> lo, Count side, int depth) {
    auto node = std::make_unique<TreeNode>();
    node->cell.id = next_id_++;
    node->cell.lo = std::move(lo);
    node->cell.side = side;
    node->cell.depth = depth;
    return node;
}

std::optional<ArchiveTree::Located> ArchiveTree::locate(std::span<const Count> counts) {
    if (!in_bounds(counts)) return std::nullopt;
    auto key = top_key(counts);
    auto it = top_.find(key);
    Located out;
    if (it == top_.end()) {
        std::vector<Count> lo(key.size());
        for (std::size_t d = 0; d < key.size(); ++d) lo[d] = key[d] * initial_side_;
        it = top_.emplace(std::move(key), make_leaf(std::move(lo), initial_side_, 0)).first;
        out.created = true;
    }
    TreeNode* node = it->second.get();
    while (!out.created && !node->leaf) {
        auto& slot = node->children[child_index(*node, counts)];
        if (!slot) {
            slot = make_leaf(child_lo(*node, child_index(*node, counts)), node->cell.side / 2, node->cell.depth + 1);
            out.created = true;
        }
        node = slot.get();
    }
    out.cell = &node->cell;
    ++node->cell.visits;
    if (out.created) {
        ++epoch_new_;
        ++total_new_;
    } else {
        ++epoch_revisits_;
        ++total_revisits_;
    }
    return out;
}

Region ArchiveTree::find(std::span<const Count> counts) const {
    if (!in_bounds(counts)) throw ContractError("point outside the archive root box");
    auto key = top_key(counts);
    Region r;
    auto it = top_.find(key);
    if (it == top_.end()) {
        r.lo.resize(key.size());
        for (std::size_t d = 0; d < key.size(); ++d) r.lo[d] = key[d] * initial_side_;
        r.side = initial_side_;
        return r;
    }
    const TreeNode* node = it->second.get();
    while (!node->leaf) {
        const std::size_t idx = child_index(*node, counts);
        const auto& slot = node->children[idx];
        if (!slot) {
            r.lo = child_lo(*node, idx);
            r.side = node->cell.side / 2;
            r.depth = node->cell.depth + 1;
            return r;
        }
        node = slot.get();
    }
    r.lo = node->cell.lo;
    r.side = node->cell.side;
    r.depth = node->cell.depth;
    r.cell = &node->cell;
    return r;
}

ArchiveTree::TreeNode* ArchiveTree::descend_to(const ArchiveCell& cell) {
    auto it = top_.find(top_key(cell.lo));
    if (it == top_.end()) return nullptr;
    TreeNode* node = it->second.get();
    while (node && node->cell.id != cell.id) {
        if (node->leaf) return nullptr;
        node = node->children[child_index(*node, cell.lo)].get();
    }
    return node;
}

bool ArchiveTree::refine(const ArchiveCell& cell) {
    TreeNode* node = descend_to(cell);
    if (!node || !node->leaf || node->cell.side <= 1) return false;
    const std::size_t fanout = std::size_t{1} << dimensions();
    const Count half = node->cell.side / 2;
    node->children.resize(fanout);
    node->leaf = false;
    if (node->cell.elite) {
        const std::size_t idx = child_index(*node, node->cell.elite->spec.counts);
        auto child = make_leaf(child_lo(*node, idx), half, node->cell.depth + 1);
        child->cell.elite = std::move(node->cell.elite);
        node->cell.elite.reset();
        ArchiveCell* moved = &child->cell;
        std::replace(occupied_.begin(), occupied_.end(), &node->cell, moved);
        node->children[idx] = std::move(child);
    }
    tiling_leaves_ += static_cast<double>(fanout) - 1.0;
    tiling_side_sum_ += static_cast<double>(fanout) * static_cast<double>(half) - static_cast<double>(node->cell.side);
    ++refinements_;
    return true;
}

std::vector<const ArchiveCell*> ArchiveTree::leaves() const {
    std::vector<const ArchiveCell*> out;
    std::function<void(const TreeNode&)> walk = [&](const TreeNode& node) {
        if (node.leaf) {
            out.push_back(&node.cell);
            return;
        }
        for (const auto& c : node.children)
            if (c) walk(*c);
    };
    for (const auto& [key, node] : top_) walk(*node);
    return out;
}

void ArchiveTree::note_occupied(ArchiveCell* cell) {
    if (std::find(occupied_.begin(), occupied_.end(), cell) == occupied_.end()) occupied_.push_back(cell);
}

double ArchiveTree::mean_tiling_side() const { return tiling_side_sum_ / tiling_leaves_; }

double clustering_fitness(double realized, double target) { return 0.0 - std::fabs(realized - target); }

bool offer(ArchiveCell& cell, Elite candidate, const BetweennessSummary& summary, InterestingnessMode mode) {
    cell.interestingness = interestingness_update(cell.interestingness, summary, mode);
    if (cell.elite && !(candidate.fitness > cell.elite->fitness)) return false;
    cell.elite = std::move(candidate);
    return true;
}

std::size_t maybe_refine(ArchiveTree& tree, const RefinementPolicy& policy) {
    const double ratio = static_cast<double>(tree.epoch_revisits()) /
                         static_cast<double>(std::max<std::uint64_t>(tree.epoch_new(), 1));
    if (!(ratio > policy.revisit_threshold)) return 0;

    std::vector<ArchiveCell*> candidates;
    for (ArchiveCell* c : tree.occupied())
        if (c->side > 1) candidates.push_back(c);
    std::stable_sort(candidates.begin(), candidates.end(), [](const ArchiveCell* a, const ArchiveCell* b) {
        if (a->interestingness.variance() != b->interestingness.variance())
            return a->interestingness.variance() > b->interestingness.variance();
        return a->id < b->id;
    });
    const auto quota = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(policy.refine_fraction * static_cast<double>(tree.occupied().size()))));
    std::size_t refined = 0;
    for (std::size_t i = 0; i < candidates.size() && refined < quota; ++i)
        if (tree.refine(*candidates[i])) ++refined;
    tree.reset_epoch();
    return refined;
}

std::pair<Count, Count> mutation_band(const ArchiveCell& cell) { return {cell.side, 2 * cell.side}; }

}  // namespace netdiv
