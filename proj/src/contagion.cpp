#include "netdiv/contagion.hpp"

#include "netdiv/error.hpp"
#include "netdiv/metrics.hpp"

#include <algorithm>
#include <numeric>

namespace netdiv {

void ContagionParams::validate(std::size_t nodes) const {
    if (threshold < 1) throw ConfigError("contagion threshold must be >= 1");
    if (!(beta >= 0.0 && beta <= 1.0)) throw ConfigError("beta must lie in [0,1]");
    if (seeds < 1 || static_cast<std::size_t>(seeds) > nodes) throw ConfigError("seed count must lie in [1, N]");
    if (rounds_cap < 0) throw ConfigError("rounds_cap must be >= 0");
}

ContagionOutcome simulate_from(const Graph& g, const ContagionParams& p, std::span<const Node> initial, Rng& rng) {
    const std::size_t n = g.node_count();
    std::vector<char> infected(n, 0);
    std::vector<int> marks(n, 0);
    std::vector<Node> fresh;
    for (Node v : initial) {
        if (v >= n) throw IndexError("seed node out of range");
        if (!infected[v]) {
            infected[v] = 1;
            fresh.push_back(v);
        }
    }
    ContagionOutcome out;
    out.final_size = static_cast<int>(fresh.size());
    std::bernoulli_distribution attempt(p.beta);
    const bool certain = p.beta >= 1.0;
    std::vector<Node> next;
    int rounds = 0;
    while (!fresh.empty() && rounds < p.rounds_cap) {
        ++rounds;
        next.clear();
        for (Node u : fresh) {
            for (Node v : g.neighbors(u)) {
                if (infected[v]) continue;
                if (!certain && !attempt(rng)) continue;
                // u is fresh exactly once, so each (u, v) pair marks at most once.
                if (++marks[v] == p.threshold) next.push_back(v);
            }
        }
        for (Node v : next) infected[v] = 1;
        if (!next.empty()) ++out.duration;
        out.final_size += static_cast<int>(next.size());
        fresh.swap(next);
    }
    return out;
}

ContagionOutcome simulate(const Graph& g, const ContagionParams& p, Rng& rng) {
    p.validate(g.node_count());
    std::vector<Node> nodes(g.node_count());
    std::iota(nodes.begin(), nodes.end(), Node{0});
    for (int i = 0; i < p.seeds; ++i) {
        const std::size_t j = std::uniform_int_distribution<std::size_t>(static_cast<std::size_t>(i), nodes.size() - 1)(rng);
        std::swap(nodes[static_cast<std::size_t>(i)], nodes[j]);
    }
    return simulate_from(g, p, std::span<const Node>(nodes.data(), static_cast<std::size_t>(p.seeds)), rng);
}

TransitionResult locate_transition(const Graph& g, const ContagionParams& base, std::span<const int> seed_grid,
                                   int runs_per_point, std::uint64_t master_seed) {
    if (seed_grid.empty()) throw ConfigError("seed grid is empty");
    if (runs_per_point < 1) throw ConfigError("runs_per_point must be >= 1");
    TransitionResult result;
    for (std::size_t gi = 0; gi < seed_grid.size(); ++gi) {
        ContagionParams p = base;
        p.seeds = seed_grid[gi];
        p.validate(g.node_count());
        RunningVariance fin, dur;
        for (int rep = 0; rep < runs_per_point; ++rep) {
            Rng rng = make_rng(master_seed, "contagion", static_cast<std::uint64_t>(p.seeds) * 1000003ULL + static_cast<std::uint64_t>(rep));
            const ContagionOutcome o = simulate(g, p, rng);
            fin.push(o.final_size);
            dur.push(o.duration);
            result.runs.push_back({p.seeds, rep, o});
        }
        TransitionPoint tp;
        tp.seed_count = p.seeds;
        tp.mean_final = fin.mean();
        tp.mean_duration = dur.mean();
        tp.var_final = fin.variance();
        tp.var_duration = dur.variance();
        result.profile.push_back(tp);
    }

    auto normalize = [&](auto field) {
        double lo = result.profile.front().*field, hi = lo;
        for (const auto& tp : result.profile) {
            lo = std::min(lo, tp.*field);
            hi = std::max(hi, tp.*field);
        }
        std::vector<double> out;
        for (const auto& tp : result.profile) out.push_back(hi > lo ? (tp.*field - lo) / (hi - lo) : 0.0);
        return out;
    };
    const auto nf = normalize(&TransitionPoint::var_final);
    const auto nd = normalize(&TransitionPoint::var_duration);
    std::size_t best = 0;
    for (std::size_t i = 0; i < result.profile.size(); ++i) {
        result.profile[i].combined = nf[i] + nd[i];
        const auto& cur = result.profile[i];
        const auto& top = result.profile[best];
        if (cur.combined > top.combined || (cur.combined == top.combined && cur.seed_count < top.seed_count)) best = i;
    }
    result.critical_seed_count = result.profile[best].seed_count;
    return result;
}

TransitionRange transition_range(std::span<const Graph> networks, const ContagionParams& base,
                                 std::span<const int> seed_grid, int runs_per_point, std::uint64_t master_seed) {
    if (networks.empty()) throw ConfigError("transition range needs at least one network");
    TransitionRange range;
    for (const Graph& g : networks) range.per_network.push_back(locate_transition(g, base, seed_grid, runs_per_point, master_seed));
    range.lo = range.hi = range.per_network.front().critical_seed_count;
    for (const auto& r : range.per_network) {
        range.lo = std::min(range.lo, r.critical_seed_count);
        range.hi = std::max(range.hi, r.critical_seed_count);
    }
    return range;
}

}  // namespace netdiv
