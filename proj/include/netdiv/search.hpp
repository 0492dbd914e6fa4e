#pragma once

#include "netdiv/archive.hpp"
#include "netdiv/cma.hpp"
#include "netdiv/diophantine.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace netdiv {

enum class SearchMode {
    Adaptive,  // refining grid, band [side, 2 side] of the parent's cell
    Fixed,     // constant grid, no refinement
    Random,    // unconstrained random perturbations
};

std::string to_string(SearchMode mode);
SearchMode parse_search_mode(const std::string& text);

struct SearchConfig {
    SearchMode mode = SearchMode::Adaptive;
    Count initial_cell_size = 64;
    Count fixed_size = 8;
    // 0 selects the mode default: initial_cell_size, fixed_size, or 1 (random).
    Count cell_size = 0;
    // Nonzero pins every sampled mutation to exactly this size.
    Count mutation_size = 0;
    double revisit_threshold = 2.0;
    double refine_fraction = 0.05;
    std::int64_t iterations = 4700;
    int population_seed_count = 5;
    int realizations_per_visit = 1;
    Count random_max_size = 128;
    InterestingnessMode interestingness = InterestingnessMode::Dispersion;
    // Explicit starting genotypes; generated at random when empty.
    std::vector<std::vector<Count>> seed_specs;
    std::uint64_t rng_seed = 0;

    Count effective_cell_size() const;
    void validate() const;
};

struct SearchPoint {
    std::int64_t iteration = 0;
    std::uint64_t new_cells = 0;  // cumulative
    std::uint64_t revisits = 0;   // cumulative
    std::uint64_t valid = 0;      // cumulative successful realizations
    std::size_t elites = 0;
    double mean_tiling_side = 0.0;
    Count mutation_size = 0;  // 0 when the iteration produced no mutation
};

struct SearchStats {
    std::uint64_t out_of_bounds = 0;
    std::uint64_t invalid = 0;
    std::uint64_t unrealized = 0;
    std::uint64_t realized = 0;
    std::uint64_t refined_cells = 0;
};

struct SearchResult {
    ArchiveTree archive;
    std::vector<SearchPoint> series;
    SearchStats stats;
    std::vector<NetworkSpec> seeds;
};

// Random subset of counts moved by signed integers; L-inf drawn from [1, max_size].
// No conservation guarantee.
NetworkSpec random_mutation_baseline(const NetworkSpec& spec, Rng& rng, Count max_size = 128);

// Random genotypes hitting the triangle target exactly that the generator
// can realize.
std::vector<NetworkSpec> generate_seed_specs(const SubgraphFamily& family, const NetworkContext& ctx, int count,
                                             const RealizationConfig& realization, std::uint64_t seed);

// Throws RuntimeFailure when no seed genotype realizes.
SearchResult run_search(const SearchConfig& cfg, const SubgraphFamily& family, const NetworkContext& ctx,
                        const MutationCatalog& catalog, const RealizationConfig& realization);

}  // namespace netdiv
