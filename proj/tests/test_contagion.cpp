#include "netdiv/contagion.hpp"
#include "netdiv/error.hpp"

#include <doctest.h>

using namespace netdiv;

namespace {

Graph complete(std::size_t n) {
    Graph g(n);
    for (Node u = 0; u < n; ++u)
        for (Node v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph ring_lattice(std::size_t n, int half) {
    Graph g(n);
    for (Node v = 0; v < n; ++v)
        for (int j = 1; j <= half; ++j) g.add_edge(v, static_cast<Node>((v + static_cast<Node>(j)) % n));
    return g;
}

}  // namespace

TEST_CASE("parameter validation") {
    ContagionParams p;
    CHECK_NOTHROW(p.validate(10));
    p.seeds = 11;
    CHECK_THROWS_AS(p.validate(10), ConfigError);
    p = {};
    p.beta = 1.5;
    CHECK_THROWS_AS(p.validate(10), ConfigError);
    p = {};
    p.threshold = 0;
    CHECK_THROWS_AS(p.validate(10), ConfigError);
}

TEST_CASE("complete graph saturates with r seeds") {
    const Graph k10 = complete(10);
    ContagionParams p;
    p.threshold = 3;
    p.seeds = 3;
    Rng rng(1);
    const auto out = simulate(k10, p, rng);
    CHECK(out.final_size == 10);
    CHECK(out.duration == 1);
}

TEST_CASE("unreachable threshold never spreads") {
    const Graph g = ring_lattice(50, 3);  // degree 6
    ContagionParams p;
    p.threshold = 7;
    p.seeds = 20;
    for (std::uint64_t s = 0; s < 10; ++s) {
        Rng rng(s);
        const auto out = simulate(g, p, rng);
        CHECK(out.final_size == 20);
        CHECK(out.duration == 0);
    }
}

TEST_CASE("beta = 1 is a function of the seed set") {
    const Graph g = ring_lattice(200, 3);
    ContagionParams p;
    p.threshold = 2;
    const std::vector<Node> seeds{0, 1, 50, 120};
    Rng a(1), b(2);
    const auto x = simulate_from(g, p, seeds, a);
    const auto y = simulate_from(g, p, seeds, b);
    CHECK(x.final_size == y.final_size);
    CHECK(x.duration == y.duration);
}

TEST_CASE("hand-traced spreading") {
    Graph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    ContagionParams p;
    p.threshold = 1;
    Rng rng(0);
    const std::vector<Node> seed{0};
    const auto out = simulate_from(path, p, seed, rng);
    CHECK(out.final_size == 3);
    CHECK(out.duration == 2);

    p.rounds_cap = 1;
    const auto capped = simulate_from(path, p, seed, rng);
    CHECK(capped.final_size == 2);
    CHECK(capped.duration == 1);

    Graph c4(4);
    for (Node v = 0; v < 4; ++v) c4.add_edge(v, (v + 1) % 4);
    p = {};
    p.threshold = 2;
    const std::vector<Node> opposite{0, 2};
    const auto sq = simulate_from(c4, p, opposite, rng);
    CHECK(sq.final_size == 4);
    CHECK(sq.duration == 1);
}

TEST_CASE("each infector marks a neighbor at most once") {
    Graph star(6);
    for (Node v = 1; v < 6; ++v) star.add_edge(0, v);
    ContagionParams p;
    p.threshold = 2;
    Rng rng(0);
    const std::vector<Node> hub{0};
    const auto out = simulate_from(star, p, hub, rng);
    CHECK(out.final_size == 1);
    CHECK(out.duration == 0);
}

TEST_CASE("beta = 0 and all-seeded limits") {
    const Graph g = ring_lattice(60, 2);
    ContagionParams p;
    p.threshold = 1;
    p.beta = 0.0;
    p.seeds = 5;
    Rng rng(3);
    CHECK(simulate(g, p, rng).final_size == 5);
    p.beta = 1.0;
    p.seeds = 60;
    const auto all = simulate(g, p, rng);
    CHECK(all.final_size == 60);
    CHECK(all.duration == 0);
}

TEST_CASE("outcome bounds under partial transmission") {
    const Graph g = ring_lattice(300, 4);
    for (std::uint64_t s = 0; s < 30; ++s) {
        ContagionParams p;
        p.threshold = 2;
        p.beta = 0.6;
        p.seeds = 1 + static_cast<int>(s % 20);
        p.rounds_cap = 25;
        Rng rng(s);
        const auto out = simulate(g, p, rng);
        CHECK(out.final_size >= p.seeds);
        CHECK(out.final_size <= 300);
        CHECK(out.duration <= p.rounds_cap);
    }
}

TEST_CASE("transition: saturated grid ties go to the smaller seed count") {
    const Graph k10 = complete(10);
    ContagionParams p;
    const std::vector<int> grid{3, 5, 10};
    const auto tr = locate_transition(k10, p, grid, 20, 7);
    REQUIRE(tr.profile.size() == 3);
    for (const auto& pt : tr.profile) {
        CHECK(pt.var_final == 0.0);
        CHECK(pt.var_duration == 0.0);
        CHECK(pt.combined == 0.0);
    }
    CHECK(tr.critical_seed_count == 3);
    CHECK(tr.runs.size() == 60);
}

TEST_CASE("transition: the variable point wins") {
    // A single edge plus eight isolated nodes: one random seed infects its
    // partner only when it lands on the edge.
    Graph g(10);
    g.add_edge(0, 1);
    ContagionParams p;
    p.threshold = 1;
    const std::vector<int> grid{10, 1};
    const auto tr = locate_transition(g, p, grid, 50, 3);
    CHECK(tr.profile[0].combined == 0.0);
    CHECK(tr.profile[1].var_final > 0.0);
    CHECK(tr.critical_seed_count == 1);
    const std::vector<int> single{4};
    CHECK(locate_transition(g, p, single, 5, 3).critical_seed_count == 4);
    CHECK_THROWS_AS(locate_transition(g, p, std::vector<int>{}, 5, 3), ConfigError);
    CHECK_THROWS_AS(locate_transition(g, p, grid, 0, 3), ConfigError);
}

TEST_CASE("transition range over identical copies has zero width") {
    const Graph g = ring_lattice(120, 3);
    ContagionParams p;
    p.threshold = 3;
    std::vector<int> grid;
    for (int s = 1; s <= 40; ++s) grid.push_back(s);
    const std::vector<Graph> copies{g, g, g};
    const auto range = transition_range(copies, p, grid, 20, 11);
    CHECK(range.lo == range.hi);
    CHECK(range.per_network.size() == 3);
    const std::vector<Graph> one{g};
    const auto single = transition_range(one, p, grid, 20, 11);
    CHECK(single.lo == single.hi);
    CHECK_THROWS_AS(transition_range(std::vector<Graph>{}, p, grid, 20, 11), ConfigError);
}
