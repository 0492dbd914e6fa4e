#include "netdiv/netdiv.h"

#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

namespace fs = std::filesystem;

TEST_CASE("version and error state") {
    CHECK(std::strlen(nd_version()) > 0);
    nd_family* fam = nullptr;
    CHECK(nd_family_load("/nonexistent/family.json", &fam) == ND_ERR_CONFIG);
    CHECK(fam == nullptr);
    CHECK(std::string(nd_last_error()).find("family") != std::string::npos);
    CHECK(nd_family_standard(nullptr) == ND_ERR_NULL_ARG);
    REQUIRE(nd_family_standard(&fam) == ND_OK);
    CHECK(std::string(nd_last_error()).empty());
    nd_family_free(fam);
}

TEST_CASE("family and catalog handles") {
    nd_family* fam = nullptr;
    REQUIRE(nd_family_standard(&fam) == ND_OK);
    CHECK(nd_family_size(fam) == 5);
    char name[16];
    REQUIRE(nd_family_kind_name(fam, 4, name, sizeof name) == ND_OK);
    CHECK(std::string(name) == "diag_square");
    char tiny[3];
    REQUIRE(nd_family_kind_name(fam, 4, tiny, sizeof tiny) == ND_OK);
    CHECK(std::string(tiny) == "di");
    CHECK(nd_family_kind_name(fam, 5, name, sizeof name) == ND_ERR_INDEX);

    nd_catalog* cat = nullptr;
    REQUIRE(nd_catalog_build(fam, 4, &cat) == ND_OK);
    const size_t n = nd_catalog_size(cat);
    CHECK(n > 0);
    const int64_t tri[5] = {4, 1, 0, 0, 2}, edges[5] = {6, 3, 4, 5, 5};
    for (size_t i = 0; i < n; ++i) {
        int64_t delta[5], size = 0;
        int enforced = 0;
        REQUIRE(nd_catalog_entry(cat, i, delta, 5, &size, &enforced) == ND_OK);
        int64_t t = 0, e = 0;
        for (int d = 0; d < 5; ++d) t += tri[d] * delta[d], e += edges[d] * delta[d];
        CHECK(t == 0);
        CHECK(e == 0);
        CHECK(size <= 4);
    }
    int64_t shortbuf[3];
    CHECK(nd_catalog_entry(cat, 0, shortbuf, 3, nullptr, nullptr) == ND_ERR_CONTRACT);
    CHECK(nd_catalog_entry(cat, n, nullptr, 0, nullptr, nullptr) == ND_ERR_INDEX);

    const fs::path dir = fs::temp_directory_path() / "netdiv_test_capi";
    fs::create_directories(dir);
    const std::string path = (dir / "cat.json").string();
    REQUIRE(nd_catalog_save(cat, path.c_str()) == ND_OK);
    nd_catalog* back = nullptr;
    REQUIRE(nd_catalog_load(path.c_str(), &back) == ND_OK);
    CHECK(nd_catalog_size(back) == n);
    nd_catalog_free(back);
    nd_catalog_free(cat);
    nd_family_free(fam);
}

TEST_CASE("graph handles") {
    nd_family* fam = nullptr;
    REQUIRE(nd_family_standard(&fam) == ND_OK);
    const int64_t counts[5] = {35, 277, 35, 42, 128};
    nd_graph* g = nullptr;
    REQUIRE(nd_graph_realize(fam, counts, 5, 1000, 7, 3.0 * 673 / 21000, 9, &g) == ND_OK);
    CHECK(nd_graph_node_count(g) == 1000);
    CHECK(nd_graph_edge_count(g) == 3500);
    double c = 0;
    REQUIRE(nd_graph_clustering(g, &c) == ND_OK);
    CHECK(c > 0.09);
    CHECK(c < 0.1);

    const fs::path dir = fs::temp_directory_path() / "netdiv_test_capi";
    fs::create_directories(dir);
    const std::string path = (dir / "g.edges.gz").string();
    REQUIRE(nd_graph_save(g, path.c_str()) == ND_OK);
    nd_graph* back = nullptr;
    REQUIRE(nd_graph_load(path.c_str(), &back) == ND_OK);
    CHECK(nd_graph_edge_count(back) == 3500);
    nd_graph_free(back);

    const int64_t bad[5] = {35, 276, 35, 42, 128};
    nd_graph* none = nullptr;
    CHECK(nd_graph_realize(fam, bad, 5, 1000, 7, 3.0 * 673 / 21000, 9, &none) == ND_ERR_CONTRACT);
    CHECK(none == nullptr);
    CHECK(nd_graph_realize(fam, counts, 5, 999, 7, 0.1, 9, &none) == ND_ERR_CONFIG);

    const std::string broken = (dir / "broken.edges").string();
    if (FILE* f = std::fopen(broken.c_str(), "w")) {
        std::fputs("0 1\n1 1\n", f);
        std::fclose(f);
    }
    CHECK(nd_graph_load(broken.c_str(), &none) == ND_ERR_PARSE);
    CHECK(std::string(nd_last_error()).find("line 2") != std::string::npos);
    nd_graph_free(g);
    nd_family_free(fam);
}

TEST_CASE("config and pipelines") {
    const fs::path dir = fs::temp_directory_path() / "netdiv_test_capi" / "run";
    fs::remove_all(dir);
    nd_config* cfg = nullptr;
    CHECK(nd_config_parse("{\"bogus\": 1}", &cfg) == ND_ERR_CONFIG);
    CHECK(nd_config_parse("{not json", &cfg) == ND_ERR_CONFIG);
    REQUIRE(nd_config_parse(R"({"context": {"nodes": 200, "degree": 6, "clustering": 0.1},
                                "catalog": {"max_size": 8},
                                "search": {"initial_cell_size": 16, "population_seed_count": 2}})",
                            &cfg) == ND_OK);
    CHECK(nd_config_set_mode(cfg, "sideways") == ND_ERR_CONFIG);
    REQUIRE(nd_config_set_mode(cfg, "fixed") == ND_OK);
    REQUIRE(nd_config_set_fixed_size(cfg, 4) == ND_OK);
    CHECK(nd_config_set_fixed_size(cfg, 0) == ND_ERR_CONFIG);
    REQUIRE(nd_config_set_iterations(cfg, 10) == ND_OK);
    REQUIRE(nd_config_set_seed(cfg, 3) == ND_OK);
    REQUIRE(nd_config_set_output(cfg, dir.string().c_str()) == ND_OK);
    char* text = nullptr;
    REQUIRE(nd_config_to_json(cfg, &text) == ND_OK);
    CHECK(std::string(text).find("\"fixed\"") != std::string::npos);
    nd_string_free(text);

    char* report = nullptr;
    REQUIRE(nd_run_catalog(cfg, &report) == ND_OK);
    CHECK(std::string(report).find("\"entries\"") != std::string::npos);
    nd_string_free(report);
    REQUIRE(nd_run_search(cfg, &report) == ND_OK);
    CHECK(std::string(report).find("\"elites\"") != std::string::npos);
    nd_string_free(report);
    CHECK(fs::exists(dir / "archive.csv"));

    fs::path edge_file;
    for (const auto& entry : fs::directory_iterator(dir / "elites")) edge_file = entry.path();
    REQUIRE_FALSE(edge_file.empty());
    int passed = 0;
    REQUIRE(nd_run_validate(cfg, edge_file.string().c_str(), &passed, nullptr) == ND_OK);
    CHECK(passed == 1);
    CHECK(nd_run_compare(cfg, nullptr) == ND_ERR_CONFIG);
    CHECK(nd_run_contagion(cfg, nullptr) == ND_ERR_CONFIG);
    nd_config_free(cfg);

    nd_config* def = nullptr;
    REQUIRE(nd_config_default(&def) == ND_OK);
    nd_config_free(def);
    CHECK(nd_config_load("/nonexistent.json", &def) == ND_ERR_CONFIG);
}
