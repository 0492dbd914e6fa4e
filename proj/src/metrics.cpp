#include "netdiv/metrics.hpp"

#include "netdiv/error.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace netdiv {

namespace {

std::vector<Node> common_neighbors(const Graph& g, Node a, Node b) {
    std::vector<Node> out;
    auto na = g.neighbors(a), nb = g.neighbors(b);
    std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(out));
    return out;
}

std::size_t common_count(const Graph& g, Node a, Node b) {
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

Count nonadjacent_pairs(const Graph& g, const std::vector<Node>& nodes) {
    Count c = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (!g.has_edge(nodes[i], nodes[j])) ++c;
    return c;
}

}  // namespace

Count count_triangles(const Graph& g) {
    Count t = 0;
    for (Node u = 0; u < g.node_count(); ++u) {
        for (Node v : g.neighbors(u)) {
            if (v <= u) continue;
            for (Node w : common_neighbors(g, u, v))
                if (w > v) ++t;
        }
    }
    return t;
}

std::optional<double> global_clustering(const Graph& g) {
    double triples = 0;
    for (Node v = 0; v < g.node_count(); ++v) {
        const double d = static_cast<double>(g.degree(v));
        triples += d * (d - 1) / 2.0;
    }
    if (triples == 0) return std::nullopt;
    return 3.0 * static_cast<double>(count_triangles(g)) / triples;
}

SubgraphCensus subgraph_census(const Graph& g, const SubgraphFamily& family) {
    if (!family.is_standard_kinds()) {
        throw CapabilityError("subgraph census supports only the standard five-kind family");
    }
    Count k4 = 0, diamonds = 0, lone_triangles = 0, squares = 0, pentagons = 0;
    const Node n = static_cast<Node>(g.node_count());

    for (Node u = 0; u < n; ++u) {
        for (Node v : g.neighbors(u)) {
            if (v <= u) continue;
            const auto cn = common_neighbors(g, u, v);
            // (u,v) as the diagonal of an induced diamond
            diamonds += nonadjacent_pairs(g, cn);
            for (std::size_t i = 0; i < cn.size(); ++i) {
                const Node w = cn[i];
                if (w <= v) continue;
                if (cn.size() == 1 && common_count(g, v, w) == 1 && common_count(g, u, w) == 1) ++lone_triangles;
                for (std::size_t j = i + 1; j < cn.size(); ++j)
                    if (g.has_edge(w, cn[j])) ++k4;
            }
        }
    }

    // Induced 4-cycles via nonadjacent opposite corners; each cycle is seen
    // from both of its diagonals.
    Count c4_twice = 0;
    std::vector<Node> far;
    for (Node u = 0; u < n; ++u) {
        far.clear();
        for (Node v : g.neighbors(u))
            for (Node w : g.neighbors(v))
                if (w > u && !g.has_edge(u, w)) far.push_back(w);
        std::sort(far.begin(), far.end());
        far.erase(std::unique(far.begin(), far.end()), far.end());
        for (Node w : far) c4_twice += nonadjacent_pairs(g, common_neighbors(g, u, w));
    }
    squares = c4_twice / 2;

    // Induced 5-cycles a-b-c-d-e-a with a minimal and b < e.
    for (Node a = 0; a < n; ++a) {
        for (Node b : g.neighbors(a)) {
            if (b <= a) continue;
            for (Node c : g.neighbors(b)) {
                if (c <= a || g.has_edge(a, c)) continue;
                for (Node d : g.neighbors(c)) {
                    if (d <= a || d == b || g.has_edge(a, d) || g.has_edge(b, d)) continue;
                    for (Node e : g.neighbors(d)) {
                        if (e <= b || e == c || !g.has_edge(e, a)) continue;
                        if (g.has_edge(b, e) || g.has_edge(c, e)) continue;
                        ++pentagons;
                    }
                }
            }
        }
    }

    SubgraphCensus out;
    out.counts.resize(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto& name = family[i].name;
        if (name == "k4") out.counts[i] = k4;
        else if (name == "diag_square") out.counts[i] = diamonds;
        else if (name == "triangle") out.counts[i] = lone_triangles;
        else if (name == "square") out.counts[i] = squares;
        else if (name == "pentagon") out.counts[i] = pentagons;
    }
    return out;
}

BetweennessSummary betweenness(const Graph& g) {
    const std::size_t n = g.node_count();
    BetweennessSummary out;
    out.per_node.assign(n, 0.0);

    // Flat CSR copy keeps the hot loops free of per-call bounds checks.
    std::vector<std::size_t> offset(n + 1, 0);
    for (Node v = 0; v < n; ++v) offset[v + 1] = offset[v] + g.degree(v);
    std::vector<Node> adj(offset[n]);
    for (Node v = 0; v < n; ++v) {
        auto nb = g.neighbors(v);
        std::copy(nb.begin(), nb.end(), adj.begin() + static_cast<std::ptrdiff_t>(offset[v]));
    }

    std::vector<int> dist(n);
    std::vector<double> sigma(n), delta(n);
    std::vector<Node> order(n);

    for (Node s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        dist[s] = 0;
        sigma[s] = 1.0;
        std::size_t head = 0, tail = 0;
        order[tail++] = s;
        while (head < tail) {
            const Node v = order[head++];
            const int dn = dist[v] + 1;
            for (std::size_t e = offset[v]; e < offset[v + 1]; ++e) {
                const Node w = adj[e];
                if (dist[w] < 0) {
                    dist[w] = dn;
                    order[tail++] = w;
                }
                if (dist[w] == dn) sigma[w] += sigma[v];
            }
        }
        for (std::size_t i = tail; i-- > 0;) {
            const Node w = order[i];
            const int dp = dist[w] - 1;
            const double coeff = (1.0 + delta[w]) / sigma[w];
            for (std::size_t e = offset[w]; e < offset[w + 1]; ++e) {
                const Node v = adj[e];
                if (dist[v] == dp) delta[v] += sigma[v] * coeff;
            }
            if (w != s) out.per_node[w] += delta[w];
        }
    }
    for (auto& b : out.per_node) b /= 2.0;

    if (n > 0) {
        RunningVariance acc;
        for (double b : out.per_node) acc.push(b);
        out.dispersion = std::sqrt(acc.variance());
    }
    return out;
}

void RunningVariance::push(double x) {
    ++count_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(count_);
    m2_ += d * (x - mean_);
}

void RunningVariance::merge(const RunningVariance& other) {
    if (other.count_ == 0) return;
    if (count_ == 0) {
        *this = other;
        return;
    }
    const double total = static_cast<double>(count_ + other.count_);
    const double d = other.mean_ - mean_;
    mean_ += d * static_cast<double>(other.count_) / total;
    m2_ += other.m2_ + d * d * static_cast<double>(count_) * static_cast<double>(other.count_) / total;
    count_ += other.count_;
}

RunningVariance RunningVariance::restore(std::uint64_t count, double mean, double variance) {
    RunningVariance r;
    r.count_ = count;
    r.mean_ = mean;
    r.m2_ = variance * static_cast<double>(count);
    return r;
}

RunningVariance interestingness_update(RunningVariance running, const BetweennessSummary& summary,
                                       InterestingnessMode mode) {
    if (mode == InterestingnessMode::Dispersion) {
        running.push(summary.dispersion);
    } else {
        for (double b : summary.per_node) running.push(b);
    }
    return running;
}

}  // namespace netdiv
