// End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
// on any failure. Usage: acceptance [output_dir]

#include "netdiv/archive.hpp"
#include "netdiv/cma.hpp"
#include "netdiv/contagion.hpp"
#include "netdiv/diophantine.hpp"
#include "netdiv/error.hpp"
#include "netdiv/metrics.hpp"
#include "netdiv/pipeline.hpp"
#include "netdiv/rng.hpp"
#include "netdiv/search.hpp"
#include "oracles.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace netdiv;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kMaster = 42;

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
        }
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

int failures = 0;

void report(int number, const std::string& name, const Verdict& v, double seconds) {
    if (!v.pass) ++failures;
    fmt::print("{} {:>2} {} ({:.1f}s): {}\n", v.pass ? "PASS" : "FAIL", number, name, seconds, v.detail);
    std::fflush(stdout);
}

void run_criterion(int number, const std::string& name, const std::function<Verdict()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v.pass = false;
        v.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(number, name, v, secs);
}

Count dot(std::span<const Count> a, std::span<const Count> b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), Count{0});
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CountRange {
    Count lo = 0, hi = 0;
};

CountRange kind_range(const ArchiveTree& archive, std::size_t kind) {
    CountRange r{std::numeric_limits<Count>::max(), std::numeric_limits<Count>::min()};
    for (const ArchiveCell* c : archive.occupied()) {
        const Count v = c->elite->spec.counts[kind];
        r.lo = std::min(r.lo, v);
        r.hi = std::max(r.hi, v);
    }
    return r;
}

std::vector<StoredElite> stored(const ArchiveTree& archive) {
    std::vector<StoredElite> out;
    for (const ArchiveCell* c : archive.occupied())
        out.push_back({c->id, c->side, c->elite->spec.counts, c->elite->realized_clustering,
                       c->elite->realization_seed});
    return out;
}

std::vector<Graph> ensemble(const ArchiveTree& archive, const NetworkContext& ctx, const SubgraphFamily& family,
                            const RealizationConfig& realization, std::size_t size) {
    const auto elites = stored(archive);
    std::vector<Graph> graphs;
    for (std::size_t i : select_diverse(elites, size)) {
        RealizationConfig rc = realization;
        rc.rng_seed = elites[i].realization_seed;
        rc.compute_census = false;
        auto rep = realize(family, NetworkSpec{elites[i].counts, ctx}, rc);
        if (!rep.ok()) throw RuntimeFailure("elite did not regenerate");
        graphs.push_back(std::move(*rep.graph));
    }
    return graphs;
}

}  // namespace

int main(int argc, char** argv) {
    const fs::path out_dir = argc > 1 ? fs::path(argv[1]) : fs::path("acceptance_out");
    fs::create_directories(out_dir);

    const auto family = SubgraphFamily::standard();
    const NetworkContext ctx{1000, 7, 0.1};
    const RealizationConfig realization;

    MutationCatalog catalog;
    double catalog_seconds = 0.0;

    run_criterion(1, "exact mutations", [&] {
        Verdict v;
        const auto start = std::chrono::steady_clock::now();
        catalog = MutationCatalog::build(family, 128);
        catalog_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const auto tri = family.triangle_row(), edges = family.edge_row();
        std::size_t exact = 0;
        for (const auto& m : catalog.entries())
            if (dot(tri, m.delta) == 0 && dot(edges, m.delta) == 0) ++exact;
        v.require(!catalog.empty() && exact == catalog.size(), "every entry conserves triangles and edges");
        v.require(catalog.contains({-1, 0, -1, 0, 2}), "worked vector (-1,0,-1,0,2) present");
        v.require(catalog_seconds < 60.0, "catalog built within 60 s");
        v.note(fmt::format("{}/{} exact, built in {:.1f}s", exact, catalog.size(), catalog_seconds));
        return v;
    });

    run_criterion(2, "catalog coverage", [&] {
        Verdict v;
        const auto st = catalog.stats();
        const Count lo = st.by_size.empty() ? 0 : st.by_size.begin()->first;
        const Count hi = st.by_size.empty() ? 0 : st.by_size.rbegin()->first;
        std::set<int> enforced;
        for (const auto& [k, n] : st.by_enforced) enforced.insert(k);
        v.require(lo == 1 && hi == 128, "sizes span [1, 128]");
        v.require(enforced == std::set<int>{1, 2, 3}, "touched counts span {1, 2, 3}");
        v.require(st.entries >= 500, "at least 500 entries");
        v.note(fmt::format("{} entries, sizes {}..{}, {} touched-count classes", st.entries, lo, hi,
                           enforced.size()));
        return v;
    });

    run_criterion(3, "parity restriction", [&] {
        Verdict v;
        const std::vector<std::string> names{"triangle", "k4", "diag_square"};
        const auto sub = family.subset(names);
        const auto tri = sub.triangle_row(), edges = sub.edge_row();
        int conserving = 0, odd = 0;
        for (Count a = -8; a <= 8; ++a)
            for (Count b = -8; b <= 8; ++b)
                for (Count c = -8; c <= 8; ++c) {
                    const std::vector<Count> d{a, b, c};
                    if (dot(tri, d) != 0 || dot(edges, d) != 0) continue;
                    ++conserving;
                    if (a % 2 != 0) ++odd;
                }
        const auto cat = MutationCatalog::build(sub, 128);
        std::size_t odd_entries = 0;
        for (const auto& m : cat.entries())
            if (m.delta[0] % 2 != 0) ++odd_entries;
        v.require(odd == 0, "brute force finds no odd triangle change in [-8,8]^3");
        v.require(!cat.empty() && odd_entries == 0, "catalog holds no odd triangle change");
        v.note(fmt::format("{} conserving vectors in [-8,8]^3, {} catalog entries, {} odd", conserving, cat.size(),
                           odd_entries));
        return v;
    });

    run_criterion(4, "generator fidelity", [&] {
        Verdict v;
        const std::vector<Count> counts{35, 277, 35, 42, 128};
        const Count triangles = triangle_contribution(family, counts);
        // The spec fixes its own triangle count; the context clustering is the
        // one that count implies at N = 1000, k = 7.
        const NetworkContext fig{1000, 7, 3.0 * static_cast<double>(triangles) / 21000.0};
        const NetworkSpec spec{counts, fig};
        v.require(is_valid_spec(family, spec), "spec valid in its implied context");
        int ok = 0, regular = 0, under = 0, inside = 0;
        for (int i = 0; i < 200; ++i) {
            RealizationConfig rc = realization;
            rc.compute_census = false;
            rc.rng_seed = derive_seed(kMaster, "fidelity", static_cast<std::uint64_t>(i));
            const auto rep = realize(family, spec, rc);
            if (!rep.ok()) continue;
            ++ok;
            if (rep.graph->is_regular(7)) ++regular;
            const double c = global_clustering(*rep.graph).value_or(-1.0);
            if (c <= 0.103) ++under;
            if (c >= 0.093 && c <= 0.107) ++inside;
        }
        v.require(ok > 0 && regular == ok, "every success is 7-regular");
        v.require(ok > 0 && under >= 0.95 * ok, ">= 95% of successes have C <= 0.103");
        v.require(ok > 0 && inside == ok, "every success within [0.093, 0.107]");
        v.note(fmt::format("{}/200 realized, {} regular, {} with C <= 0.103, {} inside the envelope", ok, regular,
                           under, inside));
        return v;
    });

    run_criterion(5, "metric oracles", [&] {
        Verdict v;
        Rng rng(derive_seed(kMaster, "oracles"));
        std::uniform_int_distribution<std::size_t> small(5, 12), mid(2, 50);
        std::uniform_real_distribution<double> dense(0.15, 0.7), sparse(0.03, 0.4);
        int census_ok = 0, between_ok = 0;
        double worst = 0.0;
        for (int t = 0; t < 50; ++t) {
            const Graph g = oracle::random_graph(small(rng), dense(rng), rng);
            if (subgraph_census(g, family).counts == oracle::census_oracle(g)) ++census_ok;
        }
        for (int t = 0; t < 50; ++t) {
            const Graph g = oracle::random_graph(mid(rng), sparse(rng), rng);
            const auto fast = betweenness(g).per_node;
            const auto slow = oracle::betweenness_oracle(g);
            double err = fast.size() == slow.size() ? 0.0 : 1e300;
            for (std::size_t i = 0; i < std::min(fast.size(), slow.size()); ++i)
                err = std::max(err, std::fabs(fast[i] - slow[i]));
            worst = std::max(worst, err);
            if (err <= 1e-9) ++between_ok;
        }
        v.require(census_ok == 50, "census matches subset enumeration on all 50 graphs");
        v.require(between_ok == 50, "betweenness within 1e-9 on all 50 graphs");
        v.note(fmt::format("census {}/50, betweenness {}/50, max error {:.2e}", census_ok, between_ok, worst));
        return v;
    });

    // Shared runs: same seeds, budget and stream for every mode.
    SearchConfig base;
    base.iterations = 4700;
    base.rng_seed = kMaster;
    auto run_mode = [&](SearchMode mode) {
        SearchConfig cfg = base;
        cfg.mode = mode;
        return run_search(cfg, family, ctx, catalog, realization);
    };
    std::optional<SearchResult> adaptive, fixed8, random;

    run_criterion(6, "adaptive beats random", [&] {
        Verdict v;
        adaptive = run_mode(SearchMode::Adaptive);
        random = run_mode(SearchMode::Random);
        const auto a = adaptive->stats.realized, r = random->stats.realized;
        v.require(a >= 2 * r, "adaptive valid networks >= 2x random");
        v.note(fmt::format("adaptive {} valid ({} elites), random {} valid ({} elites)", a,
                           adaptive->archive.occupied().size(), r, random->archive.occupied().size()));
        return v;
    });

    run_criterion(7, "adaptive vs fixed resolution", [&] {
        Verdict v;
        if (!adaptive) throw RuntimeFailure("adaptive run unavailable");
        fixed8 = run_mode(SearchMode::Fixed);
        const std::size_t k4 = family.index_of("k4");
        const auto ra = kind_range(adaptive->archive, k4), rf = kind_range(fixed8->archive, k4);
        const bool contains = ra.lo <= rf.lo && ra.hi >= rf.hi;
        const bool strict = contains && (ra.lo < rf.lo || ra.hi > rf.hi);
        const auto na = adaptive->archive.occupied().size(), nf = fixed8->archive.occupied().size();
        v.require(strict, "adaptive K4 range strictly contains the fixed-8 range");
        v.require(nf >= 5 * na, "fixed-8 finds >= 5x as many networks");
        v.note(fmt::format("K4 adaptive {}..{}, fixed-8 {}..{}; networks fixed-8 {} vs adaptive {} ({:.2f}x)", ra.lo,
                           ra.hi, rf.lo, rf.hi, nf, na, na ? static_cast<double>(nf) / na : 0.0));
        return v;
    });

    run_criterion(8, "refinement mechanics", [&] {
        Verdict v;
        if (!adaptive) throw RuntimeFailure("adaptive run unavailable");
        const RefinementPolicy policy{2.0, 0.05};

        // Trigger: ratio exactly 2 holds, 3 fires.
        ArchiveTree t({63, 63}, 16);
        for (const std::vector<Count>& p : {std::vector<Count>{1, 1}, std::vector<Count>{40, 40}}) {
            auto loc = t.locate(p);
            Elite e;
            e.spec.counts = p;
            offer(*loc->cell, e, BetweennessSummary{{}, 0.0});
            t.note_occupied(loc->cell);
        }
        t.reset_epoch();
        t.locate(std::vector<Count>{20, 1});
        t.locate(std::vector<Count>{2, 2});
        t.locate(std::vector<Count>{3, 3});
        const bool held = maybe_refine(t, policy) == 0;
        t.locate(std::vector<Count>{4, 4});
        const bool fired = maybe_refine(t, policy) == 1;
        v.require(held && fired, "refinement fires iff revisits/discoveries > 2");
        bool halved = true;
        for (const ArchiveCell* c : t.occupied())
            if (c->depth == 1 && c->side != 8) halved = false;
        v.require(halved, "refined cells halve their side");

        // Live run: every leaf side is the initial side halved per level, and
        // the band is [side, 2 side].
        bool sides_ok = true, bands_ok = true;
        std::size_t leaves = 0, deepest = 0;
        for (const ArchiveCell* c : adaptive->archive.leaves()) {
            ++leaves;
            deepest = std::max(deepest, static_cast<std::size_t>(c->depth));
            if ((c->side << c->depth) != base.initial_cell_size) sides_ok = false;
            const auto [lo, hi] = mutation_band(*c);
            if (lo != c->side || hi != 2 * c->side) bands_ok = false;
        }
        v.require(sides_ok, "leaf sides follow initial / 2^depth");
        v.require(bands_ok, "mutation bands are [side, 2 side]");
        bool monotone = true;
        for (std::size_t i = 1; i < adaptive->series.size(); ++i)
            if (adaptive->series[i].mean_tiling_side > adaptive->series[i - 1].mean_tiling_side + 1e-12)
                monotone = false;
        v.require(monotone, "mean tiling side never increases");
        v.require(adaptive->stats.refined_cells > 0, "the live run refined at least once");
        const double first = adaptive->series.empty() ? 0.0 : adaptive->series.front().mean_tiling_side;
        const double last = adaptive->series.empty() ? 0.0 : adaptive->series.back().mean_tiling_side;
        v.note(fmt::format("{} cells refined, {} visited leaves, depth <= {}, mean side {:.3f} -> {:.3f}",
                           adaptive->stats.refined_cells, leaves, deepest, first, last));
        return v;
    });

    run_criterion(9, "complex contagion", [&] {
        Verdict v;
        if (!adaptive || !random) throw RuntimeFailure("search runs unavailable");

        // beta = 1 is deterministic given the seed set.
        const auto graphs = ensemble(adaptive->archive, ctx, family, realization, 10);
        ContagionParams det;
        det.threshold = 3;
        det.seeds = 20;
        bool repeatable = true;
        Rng pick(derive_seed(kMaster, "repeat"));
        for (int i = 0; i < 20; ++i) {
            std::vector<Node> nodes(graphs.front().node_count());
            std::iota(nodes.begin(), nodes.end(), Node{0});
            std::shuffle(nodes.begin(), nodes.end(), pick);
            nodes.resize(static_cast<std::size_t>(det.seeds));
            Rng r1(i), r2(i + 1000);
            const auto o1 = simulate_from(graphs.front(), det, nodes, r1);
            const auto o2 = simulate_from(graphs.front(), det, nodes, r2);
            if (o1.final_size != o2.final_size || o1.duration != o2.duration) repeatable = false;
        }
        v.require(repeatable, "beta = 1 runs repeat exactly for a fixed seed set");

        Graph k10(10);
        for (Node a = 0; a < 10; ++a)
            for (Node b = a + 1; b < 10; ++b) k10.add_edge(a, b);
        ContagionParams sat;
        sat.threshold = 3;
        sat.seeds = 3;
        Rng r3(7);
        v.require(simulate(k10, sat, r3).final_size == 10, "K10 with r = 3 and 3 seeds saturates");

        ContagionParams stuck;
        stuck.threshold = 8;
        stuck.seeds = 50;
        bool never = true;
        for (int i = 0; i < 10; ++i) {
            Rng r4(derive_seed(kMaster, "stuck", static_cast<std::uint64_t>(i)));
            if (simulate(graphs.front(), stuck, r4).final_size != stuck.seeds) never = false;
        }
        v.require(never, "r above the maximum degree never spreads");

        SeedGrid grid;
        const auto values = grid.values();
        ContagionParams params;
        const std::uint64_t master = derive_seed(kMaster, "contagion");
        const auto baseline = ensemble(random->archive, ctx, family, realization, 10);
        const auto ra = transition_range(graphs, params, values, 100, master);
        const auto rr = transition_range(baseline, params, values, 100, master);
        v.require(ra.lo <= rr.lo && ra.hi >= rr.hi, "adaptive transition range contains the random one");
        v.note(fmt::format("transition seeds: adaptive {}..{}, random {}..{} (10 networks each)", ra.lo, ra.hi,
                           rr.lo, rr.hi));
        return v;
    });

    run_criterion(10, "determinism", [&] {
        Verdict v;
        RunConfig cfg;
        cfg.master_seed = 2024;
        cfg.search.iterations = 300;
        cfg.export_edges = false;
        const fs::path catalog_path = out_dir / "catalog.json";
        catalog.save(catalog_path.string());
        cfg.catalog.path = catalog_path;
        cfg.output_dir = out_dir / "determinism_a";
        cmd_search(cfg);
        cfg.output_dir = out_dir / "determinism_b";
        cmd_search(cfg);
        const auto a = read_file(out_dir / "determinism_a" / "archive.csv");
        const auto b = read_file(out_dir / "determinism_b" / "archive.csv");
        v.require(!a.empty() && a == b, "archive.csv byte-identical across runs");
        v.note(fmt::format("archive.csv {} bytes, {} lines", a.size(), std::count(a.begin(), a.end(), '\n')));
        return v;
    });

    fmt::print("{} criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
