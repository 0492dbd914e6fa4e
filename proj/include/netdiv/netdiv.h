#ifndef NETDIV_NETDIV_H
#define NETDIV_NETDIV_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef NETDIV_BUILDING
#    define ND_API __declspec(dllexport)
#  else
#    define ND_API __declspec(dllimport)
#  endif
#else
#  define ND_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nd_status {
    ND_OK = 0,
    ND_ERR_CONFIG = 2,
    ND_ERR_RUNTIME = 3,
    ND_ERR_PARSE = 4,
    ND_ERR_INDEX = 5,
    ND_ERR_CONTRACT = 6,
    ND_ERR_CAPABILITY = 7,
    ND_ERR_NULL_ARG = 8,
    ND_ERR_INTERNAL = 9
} nd_status;

typedef struct nd_family nd_family;
typedef struct nd_catalog nd_catalog;
typedef struct nd_graph nd_graph;
typedef struct nd_config nd_config;

/* Message of the last failed call on this thread; "" if none. */
ND_API const char* nd_last_error(void);
ND_API const char* nd_version(void);
/* Frees strings returned through char** out-parameters. */
ND_API void nd_string_free(char* s);

/* Subgraph families. */
ND_API nd_status nd_family_standard(nd_family** out);
ND_API nd_status nd_family_load(const char* path, nd_family** out);
ND_API size_t nd_family_size(const nd_family* f);
/* Writes the kind name into buf (NUL-terminated, truncated to len). */
ND_API nd_status nd_family_kind_name(const nd_family* f, size_t index, char* buf, size_t len);
ND_API void nd_family_free(nd_family* f);

/* Exact-mutation catalogs. */
ND_API nd_status nd_catalog_build(const nd_family* f, int64_t max_size, nd_catalog** out);
ND_API nd_status nd_catalog_load(const char* path, nd_catalog** out);
ND_API nd_status nd_catalog_save(const nd_catalog* c, const char* path);
ND_API size_t nd_catalog_size(const nd_catalog* c);
/* Copies entry `index` (delta of length `len`, its size and enforced count). */
ND_API nd_status nd_catalog_entry(const nd_catalog* c, size_t index, int64_t* delta, size_t len, int64_t* size,
                                  int* enforced);
ND_API void nd_catalog_free(nd_catalog* c);

/* Graphs. */
ND_API nd_status nd_graph_load(const char* path, nd_graph** out);
ND_API nd_status nd_graph_save(const nd_graph* g, const char* path);
ND_API size_t nd_graph_node_count(const nd_graph* g);
ND_API size_t nd_graph_edge_count(const nd_graph* g);
/* ND_ERR_CAPABILITY when the graph has no connected triples. */
ND_API nd_status nd_graph_clustering(const nd_graph* g, double* out);
ND_API nd_status nd_graph_realize(const nd_family* f, const int64_t* counts, size_t len, int64_t nodes, int degree,
                                  double clustering, uint64_t seed, nd_graph** out);
ND_API void nd_graph_free(nd_graph* g);

/* Run configuration. */
ND_API nd_status nd_config_default(nd_config** out);
ND_API nd_status nd_config_load(const char* path, nd_config** out);
ND_API nd_status nd_config_parse(const char* json_text, nd_config** out);
ND_API nd_status nd_config_set_seed(nd_config* c, uint64_t seed);
ND_API nd_status nd_config_set_output(nd_config* c, const char* dir);
ND_API nd_status nd_config_set_mode(nd_config* c, const char* mode);
ND_API nd_status nd_config_set_fixed_size(nd_config* c, int64_t size);
ND_API nd_status nd_config_set_iterations(nd_config* c, int64_t iterations);
ND_API nd_status nd_config_to_json(const nd_config* c, char** out);
ND_API void nd_config_free(nd_config* c);

/* Pipelines. Each writes its artifacts under the configured output
 * directory; `report` (optional) receives a JSON summary. */
ND_API nd_status nd_run_catalog(const nd_config* c, char** report);
ND_API nd_status nd_run_search(const nd_config* c, char** report);
ND_API nd_status nd_run_compare(const nd_config* c, char** report);
ND_API nd_status nd_run_contagion(const nd_config* c, char** report);
/* ND_OK with *passed = 0 or 1 for a readable edge list. */
ND_API nd_status nd_run_validate(const nd_config* c, const char* edges_path, int* passed, char** report);

#ifdef __cplusplus
}
#endif

#endif
