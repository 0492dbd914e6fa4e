#pragma once

#include "netdiv/contagion.hpp"
#include "netdiv/search.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace netdiv {

struct SeedGrid {
    int start = 1;
    int stop = 200;  // inclusive
    int step = 1;

    std::vector<int> values() const;
};

struct CatalogSettings {
    Count max_size = 128;
    int max_enforced = 3;
    // Prebuilt catalog to reuse; built on the fly when empty.
    std::filesystem::path path;
};

struct ContagionSettings {
    ContagionParams params;
    SeedGrid grid;
    int runs_per_point = 100;
    // Networks drawn from the archive: the farthest pair, extended greedily
    // by max-min count distance. Ignored when all_elites is set.
    int ensemble_size = 2;
    bool all_elites = false;
    // Search output directory (or its archive.json) to read elites from.
    std::filesystem::path archive;
};

struct CompareSettings {
    std::vector<std::filesystem::path> inputs;  // search output directories
    Count bin_width = 5;
};

struct RunConfig {
    NetworkContext context;
    std::filesystem::path family_path;  // empty: the standard family
    CatalogSettings catalog;
    SearchConfig search;
    RealizationConfig realization;
    ContagionSettings contagion;
    CompareSettings compare;
    bool export_edges = true;
    std::uint64_t master_seed = 0;
    std::filesystem::path output_dir = "out";

    // Relative paths are resolved against base_dir. Unknown keys are errors.
    static RunConfig from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
    static RunConfig load(const std::filesystem::path& path);
    nlohmann::json to_json() const;

    SubgraphFamily family() const;
    void validate() const;
};

// Version string baked in at build time.
std::string library_version();

struct CatalogReport {
    std::size_t entries = 0;
    CatalogStats stats;
    std::filesystem::path path;
};

struct SearchReport {
    std::size_t elites = 0;
    SearchStats stats;
    std::size_t seeds = 0;
    double mean_tiling_side = 0.0;
    std::vector<Count> min_counts, max_counts;
    std::filesystem::path archive_csv;
};

struct CompareReport {
    struct Run {
        std::string label;
        std::string mode;
        std::size_t networks = 0;
        std::uint64_t valid = 0;
        std::vector<Count> min_counts, max_counts;
    };
    std::vector<Run> runs;
};

struct ContagionReport {
    std::vector<std::uint64_t> network_ids;
    TransitionRange range;
};

struct ValidationReport {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    bool regular = false;
    std::optional<double> clustering;
    bool within_envelope = false;
    std::vector<Count> census;

    bool ok() const noexcept { return regular && within_envelope; }
};

// Each command creates output_dir, writes config.json and manifest.json and
// its artifacts, and returns a summary.
CatalogReport cmd_catalog(const RunConfig& cfg);
SearchReport cmd_search(const RunConfig& cfg);
CompareReport cmd_compare(const RunConfig& cfg);
ContagionReport cmd_contagion(const RunConfig& cfg);
// Re-checks an exported network: k-regular with clustering within +-0.007
// of the target.
ValidationReport cmd_validate(const RunConfig& cfg, const std::filesystem::path& edges);

nlohmann::json to_json(const CatalogReport& r);
nlohmann::json to_json(const SearchReport& r);
nlohmann::json to_json(const CompareReport& r);
nlohmann::json to_json(const ContagionReport& r);
nlohmann::json to_json(const ValidationReport& r);

// Archive exports; the CSV is byte-stable for a given archive.
std::string archive_csv(const SubgraphFamily& family, const ArchiveTree& archive);
nlohmann::json archive_json(const SubgraphFamily& family, const NetworkContext& ctx, const SearchConfig& search,
                            const RealizationConfig& realization, const ArchiveTree& archive);
std::string timeseries_csv(std::span<const SearchPoint> series);

// Archive snapshot as read back from archive.json.
struct StoredElite {
    std::uint64_t id = 0;
    Count side = 0;
    std::vector<Count> counts;
    double realized_clustering = 0.0;
    std::uint64_t realization_seed = 0;
};

struct StoredArchive {
    SubgraphFamily family = SubgraphFamily::standard();
    NetworkContext context;
    std::string mode;
    RealizationConfig realization;
    std::vector<StoredElite> elites;

    static StoredArchive load(const std::filesystem::path& path_or_dir);
    Graph regenerate(const StoredElite& elite) const;
};

// Indices of `size` elites: the farthest pair by Euclidean count distance
// (zero-distance pairs rejected), then greedy max-min additions. Ties go to
// lower indices. Throws RuntimeFailure with fewer than two distinct elites.
std::vector<std::size_t> select_diverse(std::span<const StoredElite> elites, std::size_t size);

}  // namespace netdiv
