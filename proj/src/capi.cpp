#include "netdiv/netdiv.h"

#include "netdiv/error.hpp"
#include "netdiv/pipeline.hpp"

#include <algorithm>
#include <cstring>
#include <string>

struct nd_family {
    netdiv::SubgraphFamily value;
};
struct nd_catalog {
    netdiv::MutationCatalog value;
};
struct nd_graph {
    netdiv::Graph value;
};
struct nd_config {
    netdiv::RunConfig value;
};

namespace {

thread_local std::string last_error;

nd_status fail(nd_status code, const char* what) {
    last_error = what;
    return code;
}

// Runs fn, translating exceptions to status codes.
template <typename Fn>
nd_status guarded(Fn&& fn) {
    try {
        last_error.clear();
        fn();
        return ND_OK;
    } catch (const netdiv::ParseError& e) {
        return fail(ND_ERR_PARSE, e.what());
    } catch (const netdiv::ConfigError& e) {
        return fail(ND_ERR_CONFIG, e.what());
    } catch (const netdiv::IndexError& e) {
        return fail(ND_ERR_INDEX, e.what());
    } catch (const netdiv::ContractError& e) {
        return fail(ND_ERR_CONTRACT, e.what());
    } catch (const netdiv::CapabilityError& e) {
        return fail(ND_ERR_CAPABILITY, e.what());
    } catch (const netdiv::Error& e) {
        return fail(ND_ERR_RUNTIME, e.what());
    } catch (const std::bad_alloc&) {
        return fail(ND_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(ND_ERR_RUNTIME, e.what());
    } catch (...) {
        return fail(ND_ERR_INTERNAL, "unknown exception");
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void emit(char** out, const nlohmann::json& j) {
    if (out) *out = dup_string(j.dump(2));
}

#define ND_REQUIRE(cond)                                                   \
    do {                                                                   \
        if (!(cond)) return fail(ND_ERR_NULL_ARG, "null argument: " #cond); \
    } while (0)

}  // namespace

extern "C" {

const char* nd_last_error(void) { return last_error.c_str(); }

const char* nd_version(void) {
    static const std::string v = netdiv::library_version();
    return v.c_str();
}

void nd_string_free(char* s) { delete[] s; }

nd_status nd_family_standard(nd_family** out) {
    ND_REQUIRE(out);
    return guarded([&] { *out = new nd_family{netdiv::SubgraphFamily::standard()}; });
}

nd_status nd_family_load(const char* path, nd_family** out) {
    ND_REQUIRE(path && out);
    return guarded([&] { *out = new nd_family{netdiv::SubgraphFamily::load(path)}; });
}

size_t nd_family_size(const nd_family* f) { return f ? f->value.size() : 0; }

nd_status nd_family_kind_name(const nd_family* f, size_t index, char* buf, size_t len) {
    ND_REQUIRE(f && buf && len > 0);
    if (index >= f->value.size()) return fail(ND_ERR_INDEX, "kind index out of range");
    const std::string& name = f->value[index].name;
    const size_t n = std::min(name.size(), len - 1);
    std::memcpy(buf, name.data(), n);
    buf[n] = '\0';
    return ND_OK;
}

void nd_family_free(nd_family* f) { delete f; }

nd_status nd_catalog_build(const nd_family* f, int64_t max_size, nd_catalog** out) {
    ND_REQUIRE(f && out);
    return guarded([&] { *out = new nd_catalog{netdiv::MutationCatalog::build(f->value, max_size)}; });
}

nd_status nd_catalog_load(const char* path, nd_catalog** out) {
    ND_REQUIRE(path && out);
    return guarded([&] { *out = new nd_catalog{netdiv::MutationCatalog::load(path)}; });
}

nd_status nd_catalog_save(const nd_catalog* c, const char* path) {
    ND_REQUIRE(c && path);
    return guarded([&] { c->value.save(path); });
}

size_t nd_catalog_size(const nd_catalog* c) { return c ? c->value.size() : 0; }

nd_status nd_catalog_entry(const nd_catalog* c, size_t index, int64_t* delta, size_t len, int64_t* size,
                           int* enforced) {
    ND_REQUIRE(c);
    if (index >= c->value.size()) return fail(ND_ERR_INDEX, "catalog index out of range");
    const auto& e = c->value.entries()[index];
    if (delta) {
        if (len != e.delta.size()) return fail(ND_ERR_CONTRACT, "delta buffer length does not match the family");
        std::copy(e.delta.begin(), e.delta.end(), delta);
    }
    if (size) *size = e.size;
    if (enforced) *enforced = e.enforced;
    return ND_OK;
}

void nd_catalog_free(nd_catalog* c) { delete c; }

nd_status nd_graph_load(const char* path, nd_graph** out) {
    ND_REQUIRE(path && out);
    return guarded([&] { *out = new nd_graph{netdiv::load_edge_list(path)}; });
}

nd_status nd_graph_save(const nd_graph* g, const char* path) {
    ND_REQUIRE(g && path);
    return guarded([&] { netdiv::save_edge_list(g->value, path); });
}

size_t nd_graph_node_count(const nd_graph* g) { return g ? g->value.node_count() : 0; }
size_t nd_graph_edge_count(const nd_graph* g) { return g ? g->value.edge_count() : 0; }

nd_status nd_graph_clustering(const nd_graph* g, double* out) {
    ND_REQUIRE(g && out);
    const auto c = netdiv::global_clustering(g->value);
    if (!c) return fail(ND_ERR_CAPABILITY, "graph has no connected triples");
    *out = *c;
    return ND_OK;
}

nd_status nd_graph_realize(const nd_family* f, const int64_t* counts, size_t len, int64_t nodes, int degree,
                           double clustering, uint64_t seed, nd_graph** out) {
    ND_REQUIRE(f && counts && out);
    return guarded([&] {
        netdiv::NetworkContext ctx{nodes, degree, clustering};
        ctx.validate();
        netdiv::NetworkSpec spec{std::vector<netdiv::Count>(counts, counts + len), ctx};
        netdiv::RealizationConfig rc;
        rc.rng_seed = seed;
        auto rep = netdiv::realize(f->value, spec, rc);
        if (!rep.ok()) throw netdiv::RuntimeFailure("generator exhausted its attempts");
        *out = new nd_graph{std::move(*rep.graph)};
    });
}

void nd_graph_free(nd_graph* g) { delete g; }

nd_status nd_config_default(nd_config** out) {
    ND_REQUIRE(out);
    return guarded([&] { *out = new nd_config{}; });
}

nd_status nd_config_load(const char* path, nd_config** out) {
    ND_REQUIRE(path && out);
    return guarded([&] { *out = new nd_config{netdiv::RunConfig::load(path)}; });
}

nd_status nd_config_parse(const char* json_text, nd_config** out) {
    ND_REQUIRE(json_text && out);
    return guarded([&] {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(json_text);
        } catch (const nlohmann::json::parse_error& e) {
            throw netdiv::ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
        *out = new nd_config{netdiv::RunConfig::from_json(doc)};
    });
}

nd_status nd_config_set_seed(nd_config* c, uint64_t seed) {
    ND_REQUIRE(c);
    c->value.master_seed = seed;
    return ND_OK;
}

nd_status nd_config_set_output(nd_config* c, const char* dir) {
    ND_REQUIRE(c && dir);
    c->value.output_dir = dir;
    return ND_OK;
}

nd_status nd_config_set_mode(nd_config* c, const char* mode) {
    ND_REQUIRE(c && mode);
    return guarded([&] { c->value.search.mode = netdiv::parse_search_mode(mode); });
}

nd_status nd_config_set_fixed_size(nd_config* c, int64_t size) {
    ND_REQUIRE(c);
    if (size < 1) return fail(ND_ERR_CONFIG, "fixed size must be >= 1");
    c->value.search.fixed_size = size;
    return ND_OK;
}

nd_status nd_config_set_iterations(nd_config* c, int64_t iterations) {
    ND_REQUIRE(c);
    if (iterations < 0) return fail(ND_ERR_CONFIG, "iterations must be >= 0");
    c->value.search.iterations = iterations;
    return ND_OK;
}

nd_status nd_config_to_json(const nd_config* c, char** out) {
    ND_REQUIRE(c && out);
    return guarded([&] { emit(out, c->value.to_json()); });
}

void nd_config_free(nd_config* c) { delete c; }

nd_status nd_run_catalog(const nd_config* c, char** report) {
    ND_REQUIRE(c);
    return guarded([&] { emit(report, netdiv::to_json(netdiv::cmd_catalog(c->value))); });
}

nd_status nd_run_search(const nd_config* c, char** report) {
    ND_REQUIRE(c);
    return guarded([&] { emit(report, netdiv::to_json(netdiv::cmd_search(c->value))); });
}

nd_status nd_run_compare(const nd_config* c, char** report) {
    ND_REQUIRE(c);
    return guarded([&] { emit(report, netdiv::to_json(netdiv::cmd_compare(c->value))); });
}

nd_status nd_run_contagion(const nd_config* c, char** report) {
    ND_REQUIRE(c);
    return guarded([&] { emit(report, netdiv::to_json(netdiv::cmd_contagion(c->value))); });
}

nd_status nd_run_validate(const nd_config* c, const char* edges_path, int* passed, char** report) {
    ND_REQUIRE(c && edges_path && passed);
    return guarded([&] {
        const auto r = netdiv::cmd_validate(c->value, edges_path);
        *passed = r.ok() ? 1 : 0;
        emit(report, netdiv::to_json(r));
    });
}

}  // extern "C"
