#include "netdiv/diophantine.hpp"

#include "netdiv/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace netdiv {

ConstraintSystem ConstraintSystem::conservation(const SubgraphFamily& family) {
    ConstraintSystem sys;
    sys.a = {family.triangle_row(), family.edge_row()};
    sys.b = {0, 0};
    return sys;
}

ConstraintSystem ConstraintSystem::enforcing(const SubgraphFamily& family,
                                             const std::vector<std::pair<std::size_t, Count>>& enforced) {
    ConstraintSystem sys = conservation(family);
    for (auto [idx, value] : enforced) {
        if (idx >= family.size()) throw ContractError("enforced component out of range");
        std::vector<Count> row(family.size(), 0);
        row[idx] = 1;
        sys.a.push_back(std::move(row));
        sys.b.push_back(value);
    }
    return sys;
}

std::optional<IntegerSolutionSet> integer_solutions(const ConstraintSystem& sys) {
    const std::size_t rows = sys.a.size();
    const std::size_t m = sys.columns();
    if (sys.b.size() != rows) throw ContractError("constraint system: rhs length mismatch");
    IntMatrix h = sys.a;
    IntMatrix u(m, std::vector<Count>(m, 0));
    for (std::size_t i = 0; i < m; ++i) u[i][i] = 1;

    auto col_axpy = [&](std::size_t dst, std::size_t src, Count q) {  // col dst -= q * col src
        for (auto& r : h) r[dst] -= q * r[src];
        for (auto& r : u) r[dst] -= q * r[src];
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        for (auto& r : h) std::swap(r[a], r[b]);
        for (auto& r : u) std::swap(r[a], r[b]);
    };
    auto col_negate = [&](std::size_t c) {
        for (auto& r : h) r[c] = -r[c];
        for (auto& r : u) r[c] = -r[c];
    };

    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
    std::size_t rank = 0;
    for (std::size_t i = 0; i < rows && rank < m; ++i) {
        for (std::size_t j = rank + 1; j < m; ++j) {
            while (h[i][j] != 0) {
                col_axpy(rank, j, h[i][rank] / h[i][j]);
                col_swap(rank, j);
            }
        }
        if (h[i][rank] == 0) continue;
        if (h[i][rank] < 0) col_negate(rank);
        pivots.emplace_back(i, rank);
        ++rank;
    }

    std::vector<Count> w(m, 0);
    for (auto [row, col] : pivots) {
        Count s = sys.b[row];
        for (std::size_t l = 0; l < col; ++l) s -= h[row][l] * w[l];
        if (s % h[row][col] != 0) return std::nullopt;
        w[col] = s / h[row][col];
    }
    for (std::size_t i = 0; i < rows; ++i) {
        Count s = 0;
        for (std::size_t l = 0; l < m; ++l) s += h[i][l] * w[l];
        if (s != sys.b[i]) return std::nullopt;
    }

    IntegerSolutionSet out;
    out.particular.assign(m, 0);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t l = 0; l < m; ++l) out.particular[r] += u[r][l] * w[l];
    for (std::size_t c = rank; c < m; ++c) {
        std::vector<Count> v(m);
        for (std::size_t r = 0; r < m; ++r) v[r] = u[r][c];
        out.kernel.push_back(std::move(v));
    }
    return out;
}

namespace {

long double dot(const std::vector<long double>& a, const std::vector<long double>& b) {
    long double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Count dot(const std::vector<Count>& a, const std::vector<Count>& b) {
    Count s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Solve G x = rhs for a small symmetric positive definite G.
std::vector<long double> solve_dense(std::vector<std::vector<long double>> g, std::vector<long double> rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::fabs(g[r][c]) > std::fabs(g[piv][c])) piv = r;
        std::swap(g[c], g[piv]);
        std::swap(rhs[c], rhs[piv]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const long double f = g[r][c] / g[c][c];
            for (std::size_t k = c; k < n; ++k) g[r][k] -= f * g[c][k];
            rhs[r] -= f * rhs[c];
        }
    }
    for (std::size_t i = 0; i < n; ++i) rhs[i] /= g[i][i];
    return rhs;
}

}  // namespace

IntMatrix lll_reduce(IntMatrix basis, double delta) {
    const std::size_t d = basis.size();
    if (d <= 1) return basis;
    const std::size_t n = basis.front().size();
    auto gram_schmidt = [&](std::vector<std::vector<long double>>& bstar,
                            std::vector<std::vector<long double>>& mu) {
        bstar.assign(d, std::vector<long double>(n, 0));
        mu.assign(d, std::vector<long double>(d, 0));
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t t = 0; t < n; ++t) bstar[i][t] = static_cast<long double>(basis[i][t]);
            for (std::size_t j = 0; j < i; ++j) {
                std::vector<long double> bi(basis[i].begin(), basis[i].end());
                mu[i][j] = dot(bi, bstar[j]) / dot(bstar[j], bstar[j]);
                for (std::size_t t = 0; t < n; ++t) bstar[i][t] -= mu[i][j] * bstar[j][t];
            }
        }
    };
    std::vector<std::vector<long double>> bstar, mu;
    gram_schmidt(bstar, mu);
    std::size_t k = 1;
    int guard = 0;
    while (k < d && guard++ < 100000) {
        for (std::size_t j = k; j-- > 0;) {
            const long double q = std::round(mu[k][j]);
            if (q != 0) {
                const Count qi = static_cast<Count>(q);
                for (std::size_t t = 0; t < n; ++t) basis[k][t] -= qi * basis[j][t];
                gram_schmidt(bstar, mu);
            }
        }
        if (dot(bstar[k], bstar[k]) >= (delta - mu[k][k - 1] * mu[k][k - 1]) * dot(bstar[k - 1], bstar[k - 1])) {
            ++k;
        } else {
            std::swap(basis[k], basis[k - 1]);
            gram_schmidt(bstar, mu);
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
    return basis;
}

std::optional<std::vector<Count>> solve_min_norm(const ConstraintSystem& sys) {
    auto sols = integer_solutions(sys);
    if (!sols) return std::nullopt;
    const std::vector<Count>& p = sols->particular;
    if (sols->kernel.empty()) return p;

    const IntMatrix basis = lll_reduce(sols->kernel);
    const std::size_t d = basis.size();
    const std::size_t n = p.size();

    std::vector<std::vector<long double>> gram(d, std::vector<long double>(d));
    std::vector<long double> c(d);
    for (std::size_t i = 0; i < d; ++i) {
        c[i] = static_cast<long double>(dot(basis[i], p));
        for (std::size_t j = 0; j < d; ++j) gram[i][j] = static_cast<long double>(dot(basis[i], basis[j]));
    }
    std::vector<long double> neg_c(d);
    for (std::size_t i = 0; i < d; ++i) neg_c[i] = -c[i];
    const std::vector<long double> zstar = solve_dense(gram, neg_c);

    auto point = [&](const std::vector<Count>& z) {
        std::vector<Count> x = p;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t t = 0; t < n; ++t) x[t] += z[i] * basis[i][t];
        return x;
    };
    auto quad = [&](const std::vector<long double>& y) {  // y^T G y
        long double s = 0;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) s += y[i] * gram[i][j] * y[j];
        return s;
    };

    std::vector<Count> z0(d);
    std::vector<long double> off(d);
    for (std::size_t i = 0; i < d; ++i) {
        z0[i] = static_cast<Count>(std::llround(zstar[i]));
        off[i] = static_cast<long double>(z0[i]) - zstar[i];
    }
    const long double radius2 = quad(off) + 1e-6L;

    // Per-coordinate extent of the ellipsoid (z - z*)^T G (z - z*) <= radius2.
    std::vector<Count> lo(d), hi(d);
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<long double> e(d, 0);
        e[i] = 1;
        const long double ginv_ii = solve_dense(gram, e)[i];
        const long double r = std::sqrt(std::max<long double>(radius2 * ginv_ii, 0)) + 1e-9L;
        lo[i] = static_cast<Count>(std::ceil(zstar[i] - r));
        hi[i] = static_cast<Count>(std::floor(zstar[i] + r));
    }

    std::vector<Count> best = point(z0);
    Count best_norm = dot(best, best);
    std::vector<Count> z(d);
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (i == d) {
            std::vector<Count> x = point(z);
            const Count nrm = dot(x, x);
            if (nrm < best_norm || (nrm == best_norm && x < best)) {
                best = std::move(x);
                best_norm = nrm;
            }
            return;
        }
        for (z[i] = lo[i]; z[i] <= hi[i]; ++z[i]) walk(i + 1);
    };
    walk(0);
    return best;
}

std::vector<std::size_t> MutationVector::touched() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < delta.size(); ++i)
        if (delta[i] != 0) out.push_back(i);
    return out;
}

Count MutationVector::linf() const {
    Count m = 0;
    for (Count v : delta) m = std::max(m, v < 0 ? -v : v);
    return m;
}

MutationVector MutationVector::negated() const {
    MutationVector out = *this;
    for (auto& v : out.delta) v = -v;
    return out;
}

MutationCatalog::MutationCatalog(std::string family_hash, Count max_size, std::vector<MutationVector> entries)
    : family_hash_(std::move(family_hash)), max_size_(max_size), entries_(std::move(entries)) {
    index();
}

void MutationCatalog::index() {
    std::sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) {
        if (a.size != b.size) return a.size < b.size;
        if (a.enforced != b.enforced) return a.enforced < b.enforced;
        return a.delta < b.delta;
    });
    by_size_.clear();
    for (std::size_t i = 0; i < entries_.size(); ++i) by_size_[entries_[i].size].push_back(i);
}

MutationCatalog MutationCatalog::build(const SubgraphFamily& family, Count max_size, int max_enforced) {
    if (max_size < 1) throw ContractError("catalog max_size must be >= 1");
    const std::size_t nf = family.size();
    const std::size_t cap = std::min<std::size_t>(static_cast<std::size_t>(std::max(max_enforced, 1)), nf);

    std::vector<std::vector<std::size_t>> subsets;
    for (std::size_t k = 1; k <= cap; ++k) {
        std::vector<bool> pick(nf, false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
        do {
            std::vector<std::size_t> s;
            for (std::size_t i = 0; i < nf; ++i)
                if (pick[i]) s.push_back(i);
            subsets.push_back(std::move(s));
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }

    // delta -> (size, enforced); first hit wins since sizes ascend outermost.
    std::map<std::vector<Count>, std::pair<Count, int>> found;
    for (Count s = 1; s <= max_size; ++s) {
        for (const auto& subset : subsets) {
            const std::size_t k = subset.size();
            for (std::size_t signs = 0; signs < (std::size_t{1} << k); ++signs) {
                std::vector<std::pair<std::size_t, Count>> enforced;
                for (std::size_t t = 0; t < k; ++t) enforced.emplace_back(subset[t], (signs >> t & 1) ? -s : s);
                auto x = solve_min_norm(ConstraintSystem::enforcing(family, enforced));
                if (!x) continue;
                MutationVector mv{*x, s, static_cast<int>(k)};
                if (mv.linf() > max_size) continue;
                found.try_emplace(std::move(mv.delta), s, static_cast<int>(k));
            }
        }
    }

    // Close under negation; a pair shares the smaller (size, enforced) label.
    std::vector<std::pair<std::vector<Count>, std::pair<Count, int>>> items(found.begin(), found.end());
    for (auto& [delta, label] : items) {
        std::vector<Count> neg = delta;
        for (auto& v : neg) v = -v;
        auto it = found.find(neg);
        if (it == found.end()) {
            found.emplace(std::move(neg), label);
        } else {
            const auto best = std::min(label, it->second);
            it->second = best;
            found[delta] = best;
        }
    }

    std::vector<MutationVector> entries;
    entries.reserve(found.size());
    for (auto& [delta, label] : found) entries.push_back({delta, label.first, label.second});
    return MutationCatalog(family.hash(), max_size, std::move(entries));
}

bool MutationCatalog::contains(const std::vector<Count>& delta) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.delta == delta; });
}

const MutationVector& MutationCatalog::sample(Count lo, Count hi, Rng& rng) const {
    if (entries_.empty()) throw ContractError("cannot sample from an empty mutation catalog");
    if (lo > hi) std::swap(lo, hi);
    auto first = by_size_.lower_bound(lo);
    auto last = by_size_.upper_bound(hi);
    std::size_t total = 0;
    for (auto it = first; it != last; ++it) total += it->second.size();
    if (total > 0) {
        std::size_t pick = std::uniform_int_distribution<std::size_t>(0, total - 1)(rng);
        for (auto it = first; it != last; ++it) {
            if (pick < it->second.size()) return entries_[it->second[pick]];
            pick -= it->second.size();
        }
    }
    // Nearest available size; ties go to the smaller one.
    const std::vector<std::size_t>* bucket = nullptr;
    if (first == by_size_.begin()) {
        bucket = &first->second;
    } else if (first == by_size_.end()) {
        bucket = &std::prev(first)->second;
    } else {
        auto below = std::prev(first);
        const Count d_below = lo - below->first;
        const Count d_above = first->first - hi;
        bucket = d_below <= d_above ? &below->second : &first->second;
    }
    const std::size_t pick = std::uniform_int_distribution<std::size_t>(0, bucket->size() - 1)(rng);
    return entries_[(*bucket)[pick]];
}

CatalogStats MutationCatalog::stats() const {
    CatalogStats s;
    s.entries = entries_.size();
    for (const auto& e : entries_) {
        ++s.by_size[e.size];
        ++s.by_enforced[e.enforced];
        ++s.by_support[e.touched().size()];
    }
    return s;
}

std::string MutationCatalog::to_json() const {
    nlohmann::json doc;
    doc["family_hash"] = family_hash_;
    doc["max_size"] = max_size_;
    nlohmann::json entries = nlohmann::json::array();
    nlohmann::json sizes = nlohmann::json::array();
    nlohmann::json enforced = nlohmann::json::array();
    for (const auto& e : entries_) {
        entries.push_back(e.delta);
        sizes.push_back(e.size);
        enforced.push_back(e.enforced);
    }
    doc["entries"] = std::move(entries);
    doc["sizes"] = std::move(sizes);
    doc["enforced"] = std::move(enforced);
    return doc.dump();
}

MutationCatalog MutationCatalog::from_json(const std::string& text) {
    try {
        const auto doc = nlohmann::json::parse(text);
        std::vector<MutationVector> entries;
        const auto& list = doc.at("entries");
        const bool has_sizes = doc.contains("sizes");
        const bool has_enforced = doc.contains("enforced");
        for (std::size_t i = 0; i < list.size(); ++i) {
            MutationVector mv;
            mv.delta = list[i].get<std::vector<Count>>();
            mv.size = has_sizes ? doc["sizes"].at(i).get<Count>() : mv.linf();
            mv.enforced = has_enforced ? doc["enforced"].at(i).get<int>() : static_cast<int>(mv.touched().size());
            entries.push_back(std::move(mv));
        }
        return MutationCatalog(doc.at("family_hash").get<std::string>(), doc.at("max_size").get<Count>(),
                               std::move(entries));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("catalog JSON: ") + e.what());
    }
}

void MutationCatalog::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw RuntimeFailure("cannot write catalog " + path);
    out << to_json() << '\n';
}

MutationCatalog MutationCatalog::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open catalog " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

std::optional<NetworkSpec> apply_mutation(const SubgraphFamily& family, const NetworkSpec& spec,
                                          const std::vector<Count>& delta) {
    if (delta.size() != spec.counts.size()) throw ContractError("mutation length differs from spec length");
    NetworkSpec out = spec;
    for (std::size_t i = 0; i < delta.size(); ++i) {
        out.counts[i] += delta[i];
        if (out.counts[i] < 0) return std::nullopt;
    }
    if (edge_contribution(family, out.counts) > out.context.total_edges()) return std::nullopt;
    return out;
}

}  // namespace netdiv
