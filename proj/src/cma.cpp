#include "netdiv/cma.hpp"

#include "netdiv/error.hpp"
#include "netdiv/metrics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace netdiv {

namespace {

std::size_t shared_neighbors(const Graph& g, Node a, Node b) {
    auto na = g.neighbors(a), nb = g.neighbors(b);
    std::size_t i = 0, j = 0, c = 0;
    while (i < na.size() && j < nb.size()) {
        if (na[i] < nb[j]) {
            ++i;
        } else if (nb[j] < na[i]) {
            ++j;
        } else {
            ++c;
            ++i;
            ++j;
        }
    }
    return c;
}

template <class T>
std::size_t pick_index(std::size_t n, T& rng) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace

PartialGraph::PartialGraph(std::size_t nodes, int degree)
    : graph_(nodes), stubs_(nodes, degree), degree_(degree), total_stubs_(static_cast<long long>(nodes) * degree) {}

void PartialGraph::connect(Node u, Node v, bool free_edge) {
    if (stubs_.at(u) <= 0 || stubs_.at(v) <= 0) throw ContractError("no stub left to connect");
    if (!graph_.add_edge(u, v)) throw ContractError("edge already present");
    --stubs_[u];
    --stubs_[v];
    total_stubs_ -= 2;
    if (free_edge) free_edges_.emplace_back(std::min(u, v), std::max(u, v));
}

void PartialGraph::disconnect_free(std::size_t free_index) {
    const Edge e = free_edges_.at(free_index);
    graph_.remove_edge(e.first, e.second);
    ++stubs_[e.first];
    ++stubs_[e.second];
    total_stubs_ += 2;
    free_edges_[free_index] = free_edges_.back();
    free_edges_.pop_back();
}

void PartialGraph::set_stubs(Node v, int remaining) {
    total_stubs_ += remaining - stubs_.at(v);
    stubs_[v] = remaining;
}

bool place_subgraph(PartialGraph& partial, const SubgraphKind& kind, Rng& rng, int tries) {
    const Graph& g = partial.graph();
    const std::size_t n = g.node_count();
    if (static_cast<std::size_t>(kind.nodes) > n) return false;

    std::vector<int> roles(kind.nodes);
    std::iota(roles.begin(), roles.end(), 0);
    std::stable_sort(roles.begin(), roles.end(), [&](int a, int b) { return kind.degrees[a] > kind.degrees[b]; });

    std::vector<Node> active;
    for (Node v = 0; v < n; ++v)
        if (partial.stubs(v) > 0) active.push_back(v);
    if (active.size() < static_cast<std::size_t>(kind.nodes)) return false;

    std::vector<Node> chosen(kind.nodes);
    std::vector<Node> picked;  // in pick order, for adjacency checks
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double k = static_cast<double>(partial.degree_target());

    auto compatible = [&](Node u, int need) {
        if (partial.stubs(u) < need) return false;
        for (Node c : picked)
            if (c == u || g.has_edge(c, u)) return false;
        return true;
    };

    std::vector<Node> best;
    std::size_t best_extra = std::numeric_limits<std::size_t>::max();
    std::vector<Node> pool;
    for (int attempt = 0; attempt < std::max(tries, 1); ++attempt) {
        picked.clear();
        bool ok = true;
        for (int role : roles) {
            const int need = kind.degrees[role];
            bool found = false;
            // Stub-weighted probes first, exhaustive scan as a fallback.
            for (int probe = 0; probe < 24 && !found; ++probe) {
                const Node u = active[pick_index(active.size(), rng)];
                if (compatible(u, need) && unit(rng) * k < partial.stubs(u)) {
                    chosen[role] = u;
                    found = true;
                }
            }
            if (!found) {
                pool.clear();
                for (Node u : active)
                    if (compatible(u, need)) pool.push_back(u);
                if (pool.empty()) {
                    if (picked.empty()) return false;
                    ok = false;
                    break;
                }
                chosen[role] = pool[pick_index(pool.size(), rng)];
            }
            picked.push_back(chosen[role]);
        }
        if (!ok) continue;
        std::size_t extra = 0;
        for (auto [a, b] : kind.pattern) extra += shared_neighbors(g, chosen[a], chosen[b]);
        if (extra < best_extra) {
            best_extra = extra;
            best = chosen;
        }
        if (extra == 0) break;
    }
    if (best.empty()) return false;
    for (auto [a, b] : kind.pattern) partial.connect(best[a], best[b], false);
    return true;
}

bool fill_free_edges(PartialGraph& partial, Rng& rng, int max_edge_retries) {
    const Graph& g = partial.graph();
    if (partial.total_stubs() % 2 != 0) return false;
    std::vector<Node> pool;
    for (Node v = 0; v < g.node_count(); ++v)
        for (int s = 0; s < partial.stubs(v); ++s) pool.push_back(v);
    std::shuffle(pool.begin(), pool.end(), rng);

    auto remove_at = [&](std::size_t i) {
        pool[i] = pool.back();
        pool.pop_back();
    };

    std::vector<Node> leftover;
    while (!pool.empty()) {
        const Node u = pool.back();
        pool.pop_back();
        std::size_t best = pool.size();
        std::size_t best_score = std::numeric_limits<std::size_t>::max();
        auto consider = [&](std::size_t j) {
            const Node v = pool[j];
            if (v == u || g.has_edge(u, v)) return;
            const std::size_t score = shared_neighbors(g, u, v);
            if (score < best_score) {
                best_score = score;
                best = j;
            }
        };
        for (int probe = 0; probe < 16 && !pool.empty() && best_score > 0; ++probe) consider(pick_index(pool.size(), rng));
        if (best == pool.size()) {
            for (std::size_t j = 0; j < pool.size() && best_score > 0; ++j) consider(j);
        }
        if (best == pool.size()) {
            leftover.push_back(u);
            continue;
        }
        const Node v = pool[best];
        remove_at(best);
        partial.connect(u, v, true);
    }

    // Leftover stubs could not be paired directly: swap each pair into an
    // existing free edge {x,y} -> {u,x}, {v,y}.
    for (std::size_t i = 0; i + 1 < leftover.size(); i += 2) {
        const Node u = leftover[i], v = leftover[i + 1];
        if (u != v && !g.has_edge(u, v)) {
            partial.connect(u, v, true);
            continue;
        }
        bool repaired = false;
        for (int attempt = 0; attempt < max_edge_retries && !repaired; ++attempt) {
            if (partial.free_edges().empty()) return false;
            const std::size_t idx = pick_index(partial.free_edges().size(), rng);
            auto [x, y] = partial.free_edges()[idx];
            if (rng() & 1) std::swap(x, y);
            if (x == u || x == v || y == u || y == v) continue;
            if (g.has_edge(u, x) || g.has_edge(v, y)) continue;
            const bool strict = attempt < max_edge_retries / 2;
            if (strict && (shared_neighbors(g, u, x) > 0 || shared_neighbors(g, v, y) > 0)) continue;
            partial.disconnect_free(idx);
            partial.connect(u, x, true);
            partial.connect(v, y, true);
            repaired = true;
        }
        if (!repaired) return false;
    }
    return partial.total_stubs() == 0;
}

RealizationReport realize(const SubgraphFamily& family, const NetworkSpec& spec, const RealizationConfig& cfg) {
    spec.context.validate();
    if (auto v = validate_spec(family, spec); !v.empty()) {
        throw ContractError("cannot realize invalid spec: " + v.front().message);
    }
    if (cfg.max_attempts < 1) throw ConfigError("max_attempts must be >= 1");

    std::vector<std::size_t> order(family.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (family[a].edges != family[b].edges) return family[a].edges > family[b].edges;
        return family[a].nodes > family[b].nodes;
    });

    const bool census = cfg.compute_census && family.is_standard_kinds();
    RealizationReport report;
    for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
        report.attempts_used = attempt + 1;
        const std::uint64_t seed = derive_seed(cfg.rng_seed, "realize", static_cast<std::uint64_t>(attempt));
        Rng rng(seed);
        PartialGraph partial(static_cast<std::size_t>(spec.context.nodes), spec.context.degree);
        bool ok = true;
        for (std::size_t kind : order) {
            for (Count c = 0; c < spec.counts[kind] && ok; ++c) ok = place_subgraph(partial, family[kind], rng, cfg.placement_tries);
            if (!ok) break;
        }
        if (!ok || !fill_free_edges(partial, rng, cfg.max_edge_retries)) continue;
        const double clustering = global_clustering(partial.graph()).value_or(0.0);
        if (clustering > spec.context.clustering + cfg.max_clustering_excess) continue;

        report.graph = std::move(partial).release();
        report.realized_clustering = clustering;
        report.attempt_seed = seed;
        if (census) {
            report.census = subgraph_census(*report.graph, family).counts;
            report.by_products.resize(family.size());
            for (std::size_t i = 0; i < family.size(); ++i) report.by_products[i] = report.census[i] - spec.counts[i];
        }
        return report;
    }
    return report;
}

}  // namespace netdiv
