#include "netdiv/search.hpp"

#include "netdiv/error.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace netdiv {

std::string to_string(SearchMode mode) {
    switch (mode) {
        case SearchMode::Adaptive: return "adaptive";
        case SearchMode::Fixed: return "fixed";
        case SearchMode::Random: return "random";
    }
    return "adaptive";
}

SearchMode parse_search_mode(const std::string& text) {
    if (text == "adaptive") return SearchMode::Adaptive;
    if (text == "fixed") return SearchMode::Fixed;
    if (text == "random") return SearchMode::Random;
    throw ConfigError("unknown search mode '" + text + "' (expected adaptive, fixed or random)");
}

Count SearchConfig::effective_cell_size() const {
    if (cell_size > 0) return cell_size;
    switch (mode) {
        case SearchMode::Adaptive: return initial_cell_size;
        case SearchMode::Fixed: return fixed_size;
        case SearchMode::Random: return 1;
    }
    return initial_cell_size;
}

void SearchConfig::validate() const {
    auto pow2 = [](Count v) { return v >= 1 && (v & (v - 1)) == 0; };
    if (!pow2(initial_cell_size)) throw ConfigError("initial_cell_size must be a power of two");
    if (!pow2(effective_cell_size())) throw ConfigError("cell size must be a power of two");
    if (fixed_size < 1) throw ConfigError("fixed_size must be >= 1");
    if (!(revisit_threshold > 0)) throw ConfigError("revisit_threshold must be positive");
    if (!(refine_fraction > 0 && refine_fraction <= 1)) throw ConfigError("refine_fraction must lie in (0,1]");
    if (iterations < 0) throw ConfigError("iterations must be >= 0");
    if (population_seed_count < 1 && seed_specs.empty()) throw ConfigError("population_seed_count must be >= 1");
    if (realizations_per_visit < 1) throw ConfigError("realizations_per_visit must be >= 1");
    if (random_max_size < 1) throw ConfigError("random_max_size must be >= 1");
    if (mutation_size < 0) throw ConfigError("mutation_size must be >= 0");
}

NetworkSpec random_mutation_baseline(const NetworkSpec& spec, Rng& rng, Count max_size) {
    const std::size_t n = spec.counts.size();
    std::uniform_int_distribution<Count> size_dist(1, std::max<Count>(max_size, 1));
    std::bernoulli_distribution coin(0.5);
    std::vector<Count> delta(n, 0);
    bool nonzero = false;
    while (!nonzero) {
        const Count linf = size_dist(rng);
        std::vector<std::size_t> subset;
        while (subset.empty()) {
            for (std::size_t i = 0; i < n; ++i)
                if (coin(rng)) subset.push_back(i);
        }
        std::uniform_int_distribution<Count> value(-linf, linf);
        std::fill(delta.begin(), delta.end(), 0);
        for (std::size_t i : subset) delta[i] = value(rng);
        const std::size_t pinned = subset[std::uniform_int_distribution<std::size_t>(0, subset.size() - 1)(rng)];
        delta[pinned] = coin(rng) ? linf : -linf;
        nonzero = std::any_of(delta.begin(), delta.end(), [](Count v) { return v != 0; });
    }
    NetworkSpec out = spec;
    for (std::size_t i = 0; i < n; ++i) out.counts[i] += delta[i];
    return out;
}

std::vector<NetworkSpec> generate_seed_specs(const SubgraphFamily& family, const NetworkContext& ctx, int count,
                                             const RealizationConfig& realization, std::uint64_t seed) {
    const Count target = target_triangles(ctx);
    const Count budget = ctx.total_edges();
    std::vector<std::size_t> clustering, plain;
    std::optional<std::size_t> filler;
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (family[i].triangles == 0) {
            plain.push_back(i);
        } else if (family[i].triangles == 1 && !filler) {
            filler = i;
        } else {
            clustering.push_back(i);
        }
    }

    std::vector<NetworkSpec> out;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::uint64_t attempt = 0; attempt < 4000 && static_cast<int>(out.size()) < count; ++attempt) {
        Rng rng = make_rng(seed, "seed-spec", attempt);
        NetworkSpec spec{std::vector<Count>(family.size(), 0), ctx};
        std::vector<double> w(clustering.size() + 1);
        double total_w = 0;
        for (auto& x : w) total_w += (x = unit(rng));
        Count remaining = target;
        for (std::size_t j = 0; j < clustering.size(); ++j) {
            const auto& kind = family[clustering[j]];
            const double share = static_cast<double>(target) * w[j] / total_w;
            const Count c = static_cast<Count>(std::floor(share / kind.triangles));
            spec.counts[clustering[j]] = c;
            remaining -= c * kind.triangles;
        }
        if (filler) {
            spec.counts[*filler] = remaining;
            remaining = 0;
        }
        if (remaining != 0) continue;
        const Count left = budget - edge_contribution(family, spec.counts);
        if (left < 0) continue;
        if (!plain.empty()) {
            const double frac = 0.1 + 0.4 * unit(rng);
            std::vector<double> pw(plain.size());
            double total_pw = 0;
            for (auto& x : pw) total_pw += (x = unit(rng));
            for (std::size_t j = 0; j < plain.size(); ++j) {
                const double edges = frac * static_cast<double>(left) * pw[j] / total_pw;
                spec.counts[plain[j]] = static_cast<Count>(std::floor(edges / family[plain[j]].edges));
            }
        }
        if (!is_valid_spec(family, spec)) continue;
        if (std::find(out.begin(), out.end(), spec) != out.end()) continue;
        RealizationConfig rc = realization;
        rc.rng_seed = derive_seed(seed, "seed-realize", attempt);
        if (realize(family, spec, rc).ok()) out.push_back(std::move(spec));
    }
    return out;
}

SearchResult run_search(const SearchConfig& cfg, const SubgraphFamily& family, const NetworkContext& ctx,
                        const MutationCatalog& catalog, const RealizationConfig& realization) {
    cfg.validate();
    ctx.validate();
    if (cfg.mode != SearchMode::Random) {
        if (catalog.empty()) throw ConfigError("exact-mutation search needs a non-empty catalog");
        if (catalog.family_hash() != family.hash()) throw ConfigError("catalog was built for a different family");
    }

    SearchResult result{ArchiveTree::for_context(family, ctx, cfg.effective_cell_size()), {}, {}, {}};
    ArchiveTree& tree = result.archive;
    const RefinementPolicy policy{cfg.revisit_threshold, cfg.refine_fraction};

    auto evaluate = [&](const NetworkSpec& spec, const RealizationReport& report) {
        const BetweennessSummary summary = betweenness(*report.graph);
        Elite e;
        e.spec = spec;
        e.realized_clustering = report.realized_clustering;
        e.fitness = clustering_fitness(report.realized_clustering, ctx.clustering);
        e.dispersion = summary.dispersion;
        e.census = report.census;
        return std::pair{std::move(e), summary};
    };

    // Seed population.
    if (!cfg.seed_specs.empty()) {
        for (const auto& counts : cfg.seed_specs) result.seeds.push_back({counts, ctx});
    } else {
        result.seeds = generate_seed_specs(family, ctx, cfg.population_seed_count, realization,
                                           derive_seed(cfg.rng_seed, "seeds"));
    }
    for (std::size_t i = 0; i < result.seeds.size(); ++i) {
        const NetworkSpec& spec = result.seeds[i];
        if (!is_valid_spec(family, spec) || !tree.in_bounds(spec.counts)) continue;
        RealizationConfig rc = realization;
        rc.rng_seed = derive_seed(cfg.rng_seed, "seed-realize", i);
        const RealizationReport report = realize(family, spec, rc);
        if (!report.ok()) continue;
        auto located = tree.locate(spec.counts);
        auto [elite, summary] = evaluate(spec, report);
        elite.realization_seed = rc.rng_seed;
        const bool was_empty = !located->cell->elite;
        offer(*located->cell, std::move(elite), summary, cfg.interestingness);
        if (was_empty) tree.note_occupied(located->cell);
    }
    if (tree.occupied().empty()) throw RuntimeFailure("no seed genotype could be realized");
    tree.reset_epoch();

    std::uint64_t valid = 0;
    for (std::int64_t it = 0; it < cfg.iterations; ++it) {
        Rng rng = make_rng(cfg.rng_seed, "search", static_cast<std::uint64_t>(it));
        SearchPoint point;
        point.iteration = it;

        const auto& occ = tree.occupied();
        const ArchiveCell* parent = occ[std::uniform_int_distribution<std::size_t>(0, occ.size() - 1)(rng)];
        const NetworkSpec parent_spec = parent->elite->spec;

        std::optional<NetworkSpec> child;
        if (cfg.mode == SearchMode::Random) {
            NetworkSpec raw = random_mutation_baseline(parent_spec, rng, cfg.random_max_size);
            const bool negative = std::any_of(raw.counts.begin(), raw.counts.end(), [](Count c) { return c < 0; });
            if (!negative && edge_contribution(family, raw.counts) <= ctx.total_edges()) child = std::move(raw);
            point.mutation_size = 0;
        } else {
            auto [lo, hi] = cfg.mutation_size > 0 ? std::pair{cfg.mutation_size, cfg.mutation_size}
                                                  : mutation_band(*parent);
            const MutationVector& m = catalog.sample(lo, hi, rng);
            point.mutation_size = m.size;
            child = apply_mutation(family, parent_spec, m.delta);
        }

        ArchiveCell* target = nullptr;
        if (!child || !tree.in_bounds(child->counts)) {
            ++result.stats.out_of_bounds;
        } else if (!is_valid_spec(family, *child)) {
            ++result.stats.invalid;
        } else {
            for (int r = 0; r < cfg.realizations_per_visit; ++r) {
                RealizationConfig rc = realization;
                rc.rng_seed = derive_seed(cfg.rng_seed, "realize",
                                          static_cast<std::uint64_t>(it) * cfg.realizations_per_visit + r);
                const RealizationReport report = realize(family, *child, rc);
                if (!report.ok()) {
                    ++result.stats.unrealized;
                    continue;
                }
                ++result.stats.realized;
                ++valid;
                if (!target) target = tree.locate(child->counts)->cell;
                auto [elite, summary] = evaluate(*child, report);
                elite.realization_seed = rc.rng_seed;
                const bool was_empty = !target->elite;
                offer(*target, std::move(elite), summary, cfg.interestingness);
                if (was_empty) tree.note_occupied(target);
            }
            if (target && cfg.mode == SearchMode::Adaptive) result.stats.refined_cells += maybe_refine(tree, policy);
        }

        point.new_cells = tree.total_new();
        point.revisits = tree.total_revisits();
        point.valid = valid;
        point.elites = tree.occupied().size();
        point.mean_tiling_side = tree.mean_tiling_side();
        result.series.push_back(point);
    }
    return result;
}

}  // namespace netdiv
