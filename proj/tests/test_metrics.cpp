#include "netdiv/error.hpp"
#include "netdiv/metrics.hpp"
#include "netdiv/rng.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace netdiv;

using oracle::betweenness_oracle;
using oracle::census_oracle;
using oracle::random_graph;

TEST_CASE("clustering of small graphs") {
    Graph k4(4);
    for (Node u = 0; u < 4; ++u)
        for (Node v = u + 1; v < 4; ++v) k4.add_edge(u, v);
    CHECK(count_triangles(k4) == 4);
    CHECK(*global_clustering(k4) == doctest::Approx(1.0));
    Graph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    CHECK(*global_clustering(path) == 0.0);
    CHECK_FALSE(global_clustering(Graph(3)));
}

TEST_CASE("triangle count matches triple enumeration") {
    Rng rng(11);
    for (int t = 0; t < 20; ++t) {
        const Graph g = random_graph(25, 0.25, rng);
        Count oracle = 0;
        for (Node a = 0; a < 25; ++a)
            for (Node b = a + 1; b < 25; ++b)
                for (Node c = b + 1; c < 25; ++c) oracle += g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c);
        CHECK(count_triangles(g) == oracle);
    }
}

TEST_CASE("census matches exhaustive subset enumeration on 50 random graphs") {
    const auto fam = SubgraphFamily::standard();
    Rng rng(12);
    std::uniform_int_distribution<std::size_t> size(5, 12);
    std::uniform_real_distribution<double> density(0.15, 0.7);
    for (int t = 0; t < 50; ++t) {
        const Graph g = random_graph(size(rng), density(rng), rng);
        CHECK(subgraph_census(g, fam).counts == census_oracle(g));
    }
}

TEST_CASE("census follows the family order and rejects other families") {
    const std::vector<std::string> order{"diag_square", "pentagon", "k4", "triangle", "square"};
    const auto fam = SubgraphFamily::standard().subset(order);
    Graph c5(5);
    for (Node v = 0; v < 5; ++v) c5.add_edge(v, (v + 1) % 5);
    CHECK(subgraph_census(c5, fam).counts == std::vector<Count>{0, 1, 0, 0, 0});
    const std::vector<std::string> three{"triangle", "k4", "diag_square"};
    CHECK_THROWS_AS(subgraph_census(c5, SubgraphFamily::standard().subset(three)), CapabilityError);
}

TEST_CASE("betweenness matches path counting on 50 random graphs") {
    Rng rng(13);
    std::uniform_int_distribution<std::size_t> size(2, 50);
    std::uniform_real_distribution<double> density(0.03, 0.4);
    for (int t = 0; t < 50; ++t) {
        const Graph g = random_graph(size(rng), density(rng), rng);
        const auto fast = betweenness(g);
        const auto slow = betweenness_oracle(g);
        REQUIRE(fast.per_node.size() == slow.size());
        for (std::size_t v = 0; v < slow.size(); ++v) CHECK(std::fabs(fast.per_node[v] - slow[v]) <= 1e-9);
        const double mean = std::accumulate(slow.begin(), slow.end(), 0.0) / static_cast<double>(slow.size());
        double var = 0;
        for (double x : slow) var += (x - mean) * (x - mean);
        CHECK(fast.dispersion == doctest::Approx(std::sqrt(var / static_cast<double>(slow.size()))).epsilon(1e-9));
    }
}

TEST_CASE("betweenness of a path and a star") {
    Graph path(4);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    path.add_edge(2, 3);
    CHECK(betweenness(path).per_node == std::vector<double>{0, 2, 2, 0});
    Graph star(5);
    for (Node v = 1; v < 5; ++v) star.add_edge(0, v);
    CHECK(betweenness(star).per_node[0] == doctest::Approx(6.0));
}

TEST_CASE("running variance") {
    const std::vector<double> xs{3, 1, 4, 1, 5, 9, 2, 6};
    RunningVariance all, left, right;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        all.push(xs[i]);
        (i < 3 ? left : right).push(xs[i]);
    }
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / 8.0;
    double var = 0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= 8.0;
    CHECK(all.mean() == doctest::Approx(mean));
    CHECK(all.variance() == doctest::Approx(var));
    left.merge(right);
    CHECK(left.count() == 8);
    CHECK(left.variance() == doctest::Approx(var));
    const auto back = RunningVariance::restore(all.count(), all.mean(), all.variance());
    CHECK(back.variance() == doctest::Approx(var));
    CHECK(RunningVariance{}.variance() == 0.0);
}

TEST_CASE("interestingness modes") {
    BetweennessSummary s{{1.0, 3.0}, 1.0};
    const auto disp = interestingness_update({}, s, InterestingnessMode::Dispersion);
    CHECK(disp.count() == 1);
    CHECK(disp.mean() == 1.0);
    const auto pooled = interestingness_update({}, s, InterestingnessMode::PooledNodes);
    CHECK(pooled.count() == 2);
    CHECK(pooled.variance() == doctest::Approx(1.0));
}
