#pragma once

#include "netdiv/rng.hpp"
#include "netdiv/subgraph_spec.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace netdiv {

using IntMatrix = std::vector<std::vector<Count>>;

// A x = b over the integers. Rows 0 and 1 are the triangle and edge
// conservation rows (b = 0); every further row is a unit row pinning one
// enforced component to its signed value.
struct ConstraintSystem {
    IntMatrix a;
    std::vector<Count> b;

    static ConstraintSystem conservation(const SubgraphFamily& family);
    static ConstraintSystem enforcing(const SubgraphFamily& family,
                                      const std::vector<std::pair<std::size_t, Count>>& enforced);
    std::size_t columns() const { return a.empty() ? 0 : a.front().size(); }
};

// Integer solution set of A x = b: particular + span_Z(kernel).
struct IntegerSolutionSet {
    std::vector<Count> particular;
    IntMatrix kernel;  // each entry is one basis vector of length n
};

// Hermite-style column reduction. Returns nullopt when A x = b has no
// integer solution.
std::optional<IntegerSolutionSet> integer_solutions(const ConstraintSystem& sys);

// LLL-reduces a lattice basis (rows are basis vectors). Returns the reduced basis.
IntMatrix lll_reduce(IntMatrix basis, double delta = 0.75);

// Integer solution of minimum Euclidean norm (ties: lexicographically smallest),
// or nullopt if none exists.
std::optional<std::vector<Count>> solve_min_norm(const ConstraintSystem& sys);

struct MutationVector {
    std::vector<Count> delta;
    // Magnitude of the enforced change the entry was generated with.
    Count size = 0;
    // Number of components that were enforced (1..3).
    int enforced = 0;

    std::vector<std::size_t> touched() const;
    Count linf() const;
    MutationVector negated() const;

    friend bool operator==(const MutationVector&, const MutationVector&) = default;
};

struct CatalogStats {
    std::size_t entries = 0;
    std::map<Count, std::size_t> by_size;
    std::map<int, std::size_t> by_enforced;
    std::map<std::size_t, std::size_t> by_support;
};

class MutationCatalog {
public:
    MutationCatalog() = default;
    MutationCatalog(std::string family_hash, Count max_size, std::vector<MutationVector> entries);

    // For every size s in 1..max_size, every subset S of at most `max_enforced`
    // kinds and every sign pattern on S: pin x_i = +-s for i in S and take the
    // minimum-norm integer completion. Keeps completions with L-inf <= max_size,
    // dedups by delta (smallest size, then fewest enforced components wins)
    // and closes the set under negation.
    static MutationCatalog build(const SubgraphFamily& family, Count max_size, int max_enforced = 3);

    const std::vector<MutationVector>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    Count max_size() const noexcept { return max_size_; }
    const std::string& family_hash() const noexcept { return family_hash_; }
    bool contains(const std::vector<Count>& delta) const;

    // Uniform over entries with size in [lo, hi]; when that band is empty,
    // uniform over the entries of the nearest size (ties -> smaller size).
    const MutationVector& sample(Count lo, Count hi, Rng& rng) const;

    CatalogStats stats() const;

    std::string to_json() const;
    static MutationCatalog from_json(const std::string& text);
    void save(const std::string& path) const;
    static MutationCatalog load(const std::string& path);

private:
    void index();

    std::string family_hash_;
    Count max_size_ = 0;
    std::vector<MutationVector> entries_;
    std::map<Count, std::vector<std::size_t>> by_size_;
};

inline const MutationVector& sample_mutation(const MutationCatalog& catalog, Count lo, Count hi, Rng& rng) {
    return catalog.sample(lo, hi, rng);
}

// counts + delta, or nullopt when a count turns negative or the edge budget
// is exceeded.
std::optional<NetworkSpec> apply_mutation(const SubgraphFamily& family, const NetworkSpec& spec,
                                          const std::vector<Count>& delta);

}  // namespace netdiv
