#pragma once

#include "netdiv/graph.hpp"
#include "netdiv/rng.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace netdiv {

struct ContagionParams {
    int threshold = 3;     // distinct successful exposures needed (r)
    double beta = 1.0;     // per-neighbor transmission probability
    int seeds = 1;         // initially infected nodes
    int rounds_cap = 100000;

    // Throws ConfigError for r < 1, beta outside [0,1], seeds outside [1,N].
    void validate(std::size_t nodes) const;
};

struct ContagionOutcome {
    int final_size = 0;  // ever infected, seeds included
    int duration = 0;    // rounds in which at least one node became infected
};

// Synchronous rounds. A node infected in round t makes one Bernoulli(beta)
// attempt on each susceptible neighbor in round t+1; each success is a
// permanent mark, and a susceptible node with >= r marks becomes infected at
// the end of the round. Infected nodes stay infected.
ContagionOutcome simulate_from(const Graph& g, const ContagionParams& p, std::span<const Node> initial, Rng& rng);

// Same, with a uniformly random seed set of size p.seeds drawn from rng.
ContagionOutcome simulate(const Graph& g, const ContagionParams& p, Rng& rng);

struct TransitionPoint {
    int seed_count = 0;
    double mean_final = 0.0;
    double mean_duration = 0.0;
    double var_final = 0.0;
    double var_duration = 0.0;
    double combined = 0.0;  // min-max normalized var_final + var_duration
};

struct ContagionRun {
    int seed_count = 0;
    int replicate = 0;
    ContagionOutcome outcome;
};

struct TransitionResult {
    int critical_seed_count = 0;
    std::vector<TransitionPoint> profile;
    std::vector<ContagionRun> runs;
};

// Runs `runs_per_point` simulations per grid point, each with a fresh random
// seed set. The critical point maximizes the normalized variance sum (ties go
// to the smaller seed count). Replicate streams depend only on
// (master_seed, grid point, replicate), so identical graphs give identical
// profiles.
TransitionResult locate_transition(const Graph& g, const ContagionParams& base, std::span<const int> seed_grid,
                                   int runs_per_point, std::uint64_t master_seed);

struct TransitionRange {
    int lo = 0;
    int hi = 0;
    std::vector<TransitionResult> per_network;
};

TransitionRange transition_range(std::span<const Graph> networks, const ContagionParams& base,
                                 std::span<const int> seed_grid, int runs_per_point, std::uint64_t master_seed);

}  // namespace netdiv
