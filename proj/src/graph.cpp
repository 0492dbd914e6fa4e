#include "netdiv/graph.hpp"

#include "netdiv/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include <zlib.h>

namespace netdiv {

void Graph::check_index(Node v) const {
    if (v >= adjacency_.size()) {
        throw IndexError("node " + std::to_string(v) + " out of range for graph with " +
                         std::to_string(adjacency_.size()) + " nodes");
    }
}

bool Graph::add_edge(Node u, Node v) {
    check_index(u);
    check_index(v);
    if (u == v) throw ContractError("self-loop on node " + std::to_string(u));
    auto& nu = adjacency_[u];
    auto it = std::lower_bound(nu.begin(), nu.end(), v);
    if (it != nu.end() && *it == v) return false;
    nu.insert(it, v);
    auto& nv = adjacency_[v];
    nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
    ++edges_;
    return true;
}

bool Graph::remove_edge(Node u, Node v) {
    check_index(u);
    check_index(v);
    auto& nu = adjacency_[u];
    auto it = std::lower_bound(nu.begin(), nu.end(), v);
    if (it == nu.end() || *it != v) return false;
    nu.erase(it);
    auto& nv = adjacency_[v];
    nv.erase(std::lower_bound(nv.begin(), nv.end(), u));
    --edges_;
    return true;
}

bool Graph::has_edge(Node u, Node v) const {
    check_index(u);
    check_index(v);
    const auto& nu = adjacency_[u];
    return std::binary_search(nu.begin(), nu.end(), v);
}

std::vector<int> Graph::degrees() const {
    std::vector<int> d(adjacency_.size());
    for (std::size_t v = 0; v < adjacency_.size(); ++v) d[v] = static_cast<int>(adjacency_[v].size());
    return d;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edges_);
    for (Node u = 0; u < adjacency_.size(); ++u) {
        for (Node v : adjacency_[u]) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

bool Graph::is_regular(std::size_t k) const {
    return std::all_of(adjacency_.begin(), adjacency_.end(),
                       [k](const auto& nbrs) { return nbrs.size() == k; });
}

bool is_graphical(std::span<const int> degrees) {
    std::vector<long long> d(degrees.begin(), degrees.end());
    if (std::any_of(d.begin(), d.end(), [](long long x) { return x < 0; })) return false;
    const long long total = std::accumulate(d.begin(), d.end(), 0LL);
    if (total % 2 != 0) return false;
    std::sort(d.begin(), d.end(), std::greater<>());
    const long long n = static_cast<long long>(d.size());
    if (n > 0 && d.front() >= n) return false;
    long long prefix = 0;
    for (long long k = 1; k <= n; ++k) {
        prefix += d[k - 1];
        long long tail = 0;
        for (long long i = k; i < n; ++i) tail += std::min(d[i], k);
        if (prefix > k * (k - 1) + tail) return false;
    }
    return true;
}

void write_edge_list(const Graph& g, std::ostream& out) {
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

namespace {

bool parse_node(std::string_view tok, Node& value) {
    const auto* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, value);
    return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) toks.push_back(line.substr(i, j - i));
        i = j;
    }
    return toks;
}

}  // namespace

Graph read_edge_list(std::istream& in, std::optional<std::size_t> node_count) {
    std::vector<std::pair<Edge, std::size_t>> pairs;
    std::string line;
    std::size_t lineno = 0;
    Node max_id = 0;
    bool any = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = split_ws(line);
        if (toks.empty() || toks.front().front() == '#') continue;
        Node u = 0, v = 0;
        if (toks.size() != 2 || !parse_node(toks[0], u) || !parse_node(toks[1], v)) {
            throw ParseError("malformed edge line '" + line + "'", lineno);
        }
        if (u == v) throw ParseError("self-loop on node " + std::to_string(u), lineno);
        pairs.push_back({{u, v}, lineno});
        max_id = std::max({max_id, u, v});
        any = true;
    }
    std::size_t n = any ? static_cast<std::size_t>(max_id) + 1 : 0;
    if (node_count) {
        if (any && max_id >= *node_count) {
            throw ParseError("node id " + std::to_string(max_id) + " exceeds node count " +
                                 std::to_string(*node_count),
                             0);
        }
        n = *node_count;
    }
    Graph g(n);
    for (const auto& [e, ln] : pairs) {
        if (!g.add_edge(e.first, e.second)) {
            throw ParseError("duplicate edge " + std::to_string(e.first) + " " +
                                 std::to_string(e.second),
                             ln);
        }
    }
    return g;
}

namespace {

bool is_gzip(const std::filesystem::path& path) { return path.extension() == ".gz"; }

}  // namespace

void save_edge_list(const Graph& g, const std::filesystem::path& path) {
    std::ostringstream buf;
    write_edge_list(g, buf);
    const std::string text = buf.str();
    if (is_gzip(path)) {
        gzFile f = gzopen(path.c_str(), "wb");
        if (!f) throw RuntimeFailure("cannot open " + path.string() + " for writing");
        const int written = text.empty() ? 0 : gzwrite(f, text.data(), static_cast<unsigned>(text.size()));
        gzclose(f);
        if (written != static_cast<int>(text.size())) throw RuntimeFailure("gzip write failed: " + path.string());
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RuntimeFailure("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw RuntimeFailure("write failed: " + path.string());
}

Graph load_edge_list(const std::filesystem::path& path, std::optional<std::size_t> node_count) {
    if (is_gzip(path)) {
        gzFile f = gzopen(path.c_str(), "rb");
        if (!f) throw RuntimeFailure("cannot open " + path.string());
        std::string text;
        char chunk[1 << 15];
        int got = 0;
        while ((got = gzread(f, chunk, sizeof chunk)) > 0) text.append(chunk, static_cast<std::size_t>(got));
        gzclose(f);
        if (got < 0) throw RuntimeFailure("gzip read failed: " + path.string());
        std::istringstream in(text);
        return read_edge_list(in, node_count);
    }
    std::ifstream in(path);
    if (!in) throw RuntimeFailure("cannot open " + path.string());
    return read_edge_list(in, node_count);
}

}  // namespace netdiv
