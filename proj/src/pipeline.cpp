#include "netdiv/pipeline.hpp"

#include "netdiv/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#ifndef NETDIV_VERSION
#define NETDIV_VERSION "unknown"
#endif

namespace netdiv {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kClusteringEnvelope = 0.007;

void check_keys(const json& obj, std::string_view where, std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) throw ConfigError(fmt::format("'{}' must be an object", where));
    for (const auto& [key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ConfigError(fmt::format("unknown key '{}' in '{}'", key, where));
    }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
    if (auto it = obj.find(key); it != obj.end()) out = it->get<T>();
}

fs::path resolve(const fs::path& base, const fs::path& p) {
    if (p.empty() || p.is_absolute() || base.empty()) return p;
    return base / p;
}

json realization_to_json(const RealizationConfig& r) {
    return {{"max_attempts", r.max_attempts},
            {"max_edge_retries", r.max_edge_retries},
            {"placement_tries", r.placement_tries},
            {"max_clustering_excess", r.max_clustering_excess},
            {"compute_census", r.compute_census}};
}

RealizationConfig realization_from_json(const json& j) {
    check_keys(j, "realization",
               {"max_attempts", "max_edge_retries", "placement_tries", "max_clustering_excess", "compute_census"});
    RealizationConfig r;
    read(j, "max_attempts", r.max_attempts);
    read(j, "max_edge_retries", r.max_edge_retries);
    read(j, "placement_tries", r.placement_tries);
    read(j, "max_clustering_excess", r.max_clustering_excess);
    read(j, "compute_census", r.compute_census);
    return r;
}

json context_to_json(const NetworkContext& c) {
    return {{"nodes", c.nodes}, {"degree", c.degree}, {"clustering", c.clustering}};
}

NetworkContext context_from_json(const json& j) {
    check_keys(j, "context", {"nodes", "degree", "clustering"});
    NetworkContext c;
    read(j, "nodes", c.nodes);
    read(j, "degree", c.degree);
    read(j, "clustering", c.clustering);
    return c;
}

std::string interestingness_name(InterestingnessMode m) {
    return m == InterestingnessMode::PooledNodes ? "pooled" : "dispersion";
}

InterestingnessMode parse_interestingness(const std::string& s) {
    if (s == "dispersion") return InterestingnessMode::Dispersion;
    if (s == "pooled") return InterestingnessMode::PooledNodes;
    throw ConfigError("unknown interestingness '" + s + "' (expected dispersion or pooled)");
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RuntimeFailure("cannot write " + path.string());
    out << text;
    if (!out) throw RuntimeFailure("write failed for " + path.string());
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw RuntimeFailure("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void prepare_output(const RunConfig& cfg, std::string_view command) {
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec) throw RuntimeFailure("cannot create " + cfg.output_dir.string() + ": " + ec.message());
    write_text(cfg.output_dir / "config.json", cfg.to_json().dump(2) + "\n");
    const json manifest = {{"version", library_version()},
                           {"command", std::string(command)},
                           {"master_seed", cfg.master_seed}};
    write_text(cfg.output_dir / "manifest.json", manifest.dump(2) + "\n");
}

MutationCatalog obtain_catalog(const RunConfig& cfg, const SubgraphFamily& family) {
    if (!cfg.catalog.path.empty()) {
        MutationCatalog cat = MutationCatalog::load(cfg.catalog.path.string());
        if (cat.family_hash() != family.hash()) throw ConfigError("catalog was built for a different family");
        return cat;
    }
    return MutationCatalog::build(family, cfg.catalog.max_size, cfg.catalog.max_enforced);
}

std::string fmt_double(double v) { return fmt::format("{:.12g}", v); }

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

double count_distance(const StoredElite& a, const StoredElite& b) {
    double s = 0;
    for (std::size_t d = 0; d < a.counts.size(); ++d) {
        const double diff = static_cast<double>(a.counts[d] - b.counts[d]);
        s += diff * diff;
    }
    return std::sqrt(s);
}

}  // namespace

std::vector<int> SeedGrid::values() const {
    if (start < 1 || step < 1 || stop < start) throw ConfigError("seed grid needs 1 <= start <= stop and step >= 1");
    std::vector<int> out;
    for (int v = start; v <= stop; v += step) out.push_back(v);
    return out;
}

std::string library_version() { return NETDIV_VERSION; }

RunConfig RunConfig::from_json(const json& doc, const fs::path& base_dir) {
    RunConfig cfg;
    try {
        check_keys(doc, "config",
                   {"context", "family", "catalog", "search", "realization", "contagion", "compare", "export_edges",
                    "master_seed", "output_dir"});
        if (auto it = doc.find("context"); it != doc.end()) cfg.context = context_from_json(*it);
        if (auto it = doc.find("family"); it != doc.end() && !it->get<std::string>().empty())
            cfg.family_path = resolve(base_dir, it->get<std::string>());
        if (auto it = doc.find("catalog"); it != doc.end()) {
            check_keys(*it, "catalog", {"max_size", "max_enforced", "path"});
            read(*it, "max_size", cfg.catalog.max_size);
            read(*it, "max_enforced", cfg.catalog.max_enforced);
            if (auto p = it->find("path"); p != it->end()) cfg.catalog.path = resolve(base_dir, p->get<std::string>());
        }
        if (auto it = doc.find("search"); it != doc.end()) {
            check_keys(*it, "search",
                       {"mode", "initial_cell_size", "fixed_size", "cell_size", "mutation_size", "revisit_threshold",
                        "refine_fraction", "iterations", "population_seed_count", "realizations_per_visit",
                        "random_max_size", "interestingness", "seed_specs"});
            auto& s = cfg.search;
            if (auto m = it->find("mode"); m != it->end()) s.mode = parse_search_mode(m->get<std::string>());
            read(*it, "initial_cell_size", s.initial_cell_size);
            read(*it, "fixed_size", s.fixed_size);
            read(*it, "cell_size", s.cell_size);
            read(*it, "mutation_size", s.mutation_size);
            read(*it, "revisit_threshold", s.revisit_threshold);
            read(*it, "refine_fraction", s.refine_fraction);
            read(*it, "iterations", s.iterations);
            read(*it, "population_seed_count", s.population_seed_count);
            read(*it, "realizations_per_visit", s.realizations_per_visit);
            read(*it, "random_max_size", s.random_max_size);
            if (auto m = it->find("interestingness"); m != it->end())
                s.interestingness = parse_interestingness(m->get<std::string>());
            read(*it, "seed_specs", s.seed_specs);
        }
        if (auto it = doc.find("realization"); it != doc.end()) cfg.realization = realization_from_json(*it);
        if (auto it = doc.find("contagion"); it != doc.end()) {
            check_keys(*it, "contagion",
                       {"threshold", "beta", "rounds_cap", "seed_grid", "runs_per_point", "ensemble_size",
                        "all_elites", "archive"});
            auto& c = cfg.contagion;
            read(*it, "threshold", c.params.threshold);
            read(*it, "beta", c.params.beta);
            read(*it, "rounds_cap", c.params.rounds_cap);
            if (auto g = it->find("seed_grid"); g != it->end()) {
                check_keys(*g, "seed_grid", {"start", "stop", "step"});
                read(*g, "start", c.grid.start);
                read(*g, "stop", c.grid.stop);
                read(*g, "step", c.grid.step);
            }
            read(*it, "runs_per_point", c.runs_per_point);
            read(*it, "ensemble_size", c.ensemble_size);
            read(*it, "all_elites", c.all_elites);
            if (auto p = it->find("archive"); p != it->end()) c.archive = resolve(base_dir, p->get<std::string>());
        }
        if (auto it = doc.find("compare"); it != doc.end()) {
            check_keys(*it, "compare", {"inputs", "bin_width"});
            if (auto p = it->find("inputs"); p != it->end())
                for (const auto& s : *p) cfg.compare.inputs.push_back(resolve(base_dir, s.get<std::string>()));
            read(*it, "bin_width", cfg.compare.bin_width);
        }
        read(doc, "export_edges", cfg.export_edges);
        read(doc, "master_seed", cfg.master_seed);
        if (auto it = doc.find("output_dir"); it != doc.end()) cfg.output_dir = resolve(base_dir, it->get<std::string>());
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
    return cfg;
}

RunConfig RunConfig::load(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return from_json(doc, path.parent_path());
}

json RunConfig::to_json() const {
    json seeds = json::array();
    for (const auto& s : search.seed_specs) seeds.push_back(s);
    json inputs = json::array();
    for (const auto& p : compare.inputs) inputs.push_back(p.string());
    return {
        {"context", context_to_json(context)},
        {"family", family_path.string()},
        {"catalog", {{"max_size", catalog.max_size}, {"max_enforced", catalog.max_enforced}, {"path", catalog.path.string()}}},
        {"search",
         {{"mode", to_string(search.mode)},
          {"initial_cell_size", search.initial_cell_size},
          {"fixed_size", search.fixed_size},
          {"cell_size", search.cell_size},
          {"mutation_size", search.mutation_size},
          {"revisit_threshold", search.revisit_threshold},
          {"refine_fraction", search.refine_fraction},
          {"iterations", search.iterations},
          {"population_seed_count", search.population_seed_count},
          {"realizations_per_visit", search.realizations_per_visit},
          {"random_max_size", search.random_max_size},
          {"interestingness", interestingness_name(search.interestingness)},
          {"seed_specs", seeds}}},
        {"realization", realization_to_json(realization)},
        {"contagion",
         {{"threshold", contagion.params.threshold},
          {"beta", contagion.params.beta},
          {"rounds_cap", contagion.params.rounds_cap},
          {"seed_grid", {{"start", contagion.grid.start}, {"stop", contagion.grid.stop}, {"step", contagion.grid.step}}},
          {"runs_per_point", contagion.runs_per_point},
          {"ensemble_size", contagion.ensemble_size},
          {"all_elites", contagion.all_elites},
          {"archive", contagion.archive.string()}}},
        {"compare", {{"inputs", inputs}, {"bin_width", compare.bin_width}}},
        {"export_edges", export_edges},
        {"master_seed", master_seed},
        {"output_dir", output_dir.string()},
    };
}

SubgraphFamily RunConfig::family() const {
    return family_path.empty() ? SubgraphFamily::standard() : SubgraphFamily::load(family_path.string());
}

void RunConfig::validate() const {
    context.validate();
    if (!family_path.empty() && !fs::exists(family_path)) throw ConfigError("family file not found: " + family_path.string());
    if (!catalog.path.empty() && !fs::exists(catalog.path)) throw ConfigError("catalog file not found: " + catalog.path.string());
    if (catalog.max_size < 1) throw ConfigError("catalog.max_size must be >= 1");
    if (catalog.max_enforced < 1) throw ConfigError("catalog.max_enforced must be >= 1");
    search.validate();
    if (realization.max_attempts < 1) throw ConfigError("realization.max_attempts must be >= 1");
    if (realization.max_edge_retries < 0 || realization.placement_tries < 1)
        throw ConfigError("realization retry budgets must be positive");
    if (!(realization.max_clustering_excess >= 0)) throw ConfigError("realization.max_clustering_excess must be >= 0");
    const auto& c = contagion;
    if (c.params.threshold < 1) throw ConfigError("contagion.threshold must be >= 1");
    if (!(c.params.beta >= 0.0 && c.params.beta <= 1.0)) throw ConfigError("contagion.beta must lie in [0,1]");
    if (c.params.rounds_cap < 0) throw ConfigError("contagion.rounds_cap must be >= 0");
    (void)c.grid.values();
    if (c.grid.stop > context.nodes) throw ConfigError("contagion.seed_grid.stop exceeds the node count");
    if (c.runs_per_point < 2) throw ConfigError("contagion.runs_per_point must be >= 2");
    if (c.ensemble_size < 2) throw ConfigError("contagion.ensemble_size must be >= 2");
    if (compare.bin_width < 1) throw ConfigError("compare.bin_width must be >= 1");
}

// --- exports -----------------------------------------------------------------

std::string archive_csv(const SubgraphFamily& family, const ArchiveTree& archive) {
    std::string out = "cell_id,depth,side";
    for (const auto& k : family.kinds()) out += "," + k.name;
    out += ",fitness,realized_clustering,dispersion,interest_samples,interest_variance,visits,realization_seed\n";
    for (const ArchiveCell* cell : archive.leaves()) {
        if (!cell->elite) continue;
        const Elite& e = *cell->elite;
        out += fmt::format("{},{},{}", cell->id, cell->depth, cell->side);
        for (Count c : e.spec.counts) out += fmt::format(",{}", c);
        out += fmt::format(",{},{},{},{},{},{},{}\n", fmt_double(e.fitness), fmt_double(e.realized_clustering),
                           fmt_double(e.dispersion), cell->interestingness.count(),
                           fmt_double(cell->interestingness.variance()), cell->visits, e.realization_seed);
    }
    return out;
}

json archive_json(const SubgraphFamily& family, const NetworkContext& ctx, const SearchConfig& search,
                  const RealizationConfig& realization, const ArchiveTree& archive) {
    json elites = json::array();
    for (const ArchiveCell* cell : archive.leaves()) {
        if (!cell->elite) continue;
        const Elite& e = *cell->elite;
        elites.push_back({{"id", cell->id},
                          {"depth", cell->depth},
                          {"side", cell->side},
                          {"lo", cell->lo},
                          {"counts", e.spec.counts},
                          {"fitness", e.fitness},
                          {"realized_clustering", e.realized_clustering},
                          {"dispersion", e.dispersion},
                          {"census", e.census},
                          {"realization_seed", e.realization_seed}});
    }
    return {{"family", json::parse(family.to_json())},
            {"context", context_to_json(ctx)},
            {"mode", to_string(search.mode)},
            {"cell_size", search.effective_cell_size()},
            {"refinements", archive.refinements()},
            {"realization", realization_to_json(realization)},
            {"elites", std::move(elites)}};
}

std::string timeseries_csv(std::span<const SearchPoint> series) {
    std::string out = "iteration,new_cells,revisits,valid,elites,mean_tiling_side,mutation_size\n";
    for (const auto& p : series)
        out += fmt::format("{},{},{},{},{},{},{}\n", p.iteration, p.new_cells, p.revisits, p.valid, p.elites,
                           fmt_double(p.mean_tiling_side), p.mutation_size);
    return out;
}

StoredArchive StoredArchive::load(const fs::path& path_or_dir) {
    const fs::path path = fs::is_directory(path_or_dir) ? path_or_dir / "archive.json" : path_or_dir;
    if (!fs::exists(path)) throw ConfigError("archive not found: " + path.string());
    StoredArchive a;
    try {
        const json doc = json::parse(read_text(path));
        a.family = SubgraphFamily::from_json(doc.at("family").dump());
        a.context = context_from_json(doc.at("context"));
        a.mode = doc.at("mode").get<std::string>();
        a.realization = realization_from_json(doc.at("realization"));
        for (const auto& e : doc.at("elites")) {
            StoredElite s;
            s.id = e.at("id").get<std::uint64_t>();
            s.side = e.at("side").get<Count>();
            s.counts = e.at("counts").get<std::vector<Count>>();
            s.realized_clustering = e.at("realized_clustering").get<double>();
            s.realization_seed = e.at("realization_seed").get<std::uint64_t>();
            if (s.counts.size() != a.family.size()) throw ConfigError("elite count vector has the wrong length");
            a.elites.push_back(std::move(s));
        }
    } catch (const json::exception& e) {
        throw ConfigError("malformed archive " + path.string() + ": " + e.what());
    }
    return a;
}

Graph StoredArchive::regenerate(const StoredElite& elite) const {
    RealizationConfig rc = realization;
    rc.rng_seed = elite.realization_seed;
    RealizationReport rep = realize(family, NetworkSpec{elite.counts, context}, rc);
    if (!rep.ok()) throw RuntimeFailure(fmt::format("elite {} no longer realizes", elite.id));
    return std::move(*rep.graph);
}

std::vector<std::size_t> select_diverse(std::span<const StoredElite> elites, std::size_t size) {
    std::size_t bi = 0, bj = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < elites.size(); ++i)
        for (std::size_t j = i + 1; j < elites.size(); ++j) {
            const double d = count_distance(elites[i], elites[j]);
            if (d > best) {
                best = d;
                bi = i;
                bj = j;
            }
        }
    if (best == 0.0) throw RuntimeFailure("contagion needs at least two distinct elites");
    std::vector<std::size_t> chosen{bi, bj};
    std::vector<double> nearest(elites.size());
    for (std::size_t i = 0; i < elites.size(); ++i)
        nearest[i] = std::min(count_distance(elites[i], elites[bi]), count_distance(elites[i], elites[bj]));
    while (chosen.size() < std::min(size, elites.size())) {
        std::size_t pick = elites.size();
        for (std::size_t i = 0; i < elites.size(); ++i) {
            if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
            if (pick == elites.size() || nearest[i] > nearest[pick]) pick = i;
        }
        chosen.push_back(pick);
        for (std::size_t i = 0; i < elites.size(); ++i)
            nearest[i] = std::min(nearest[i], count_distance(elites[i], elites[pick]));
    }
    return chosen;
}

// --- commands ----------------------------------------------------------------

CatalogReport cmd_catalog(const RunConfig& cfg) {
    cfg.validate();
    const SubgraphFamily family = cfg.family();
    prepare_output(cfg, "catalog");
    const MutationCatalog cat = obtain_catalog(cfg, family);
    CatalogReport r;
    r.entries = cat.size();
    r.stats = cat.stats();
    r.path = cfg.output_dir / "catalog.json";
    cat.save(r.path.string());
    std::string sizes = "size,entries\n";
    for (const auto& [s, n] : r.stats.by_size) sizes += fmt::format("{},{}\n", s, n);
    write_text(cfg.output_dir / "catalog_sizes.csv", sizes);
    std::string touched = "touched,entries\n";
    for (const auto& [t, n] : r.stats.by_enforced) touched += fmt::format("{},{}\n", t, n);
    write_text(cfg.output_dir / "catalog_touched.csv", touched);
    return r;
}

SearchReport cmd_search(const RunConfig& cfg) {
    cfg.validate();
    const SubgraphFamily family = cfg.family();
    prepare_output(cfg, "search");
    const MutationCatalog cat = cfg.search.mode == SearchMode::Random ? MutationCatalog{} : obtain_catalog(cfg, family);
    SearchConfig sc = cfg.search;
    sc.rng_seed = derive_seed(cfg.master_seed, "search");
    const SearchResult res = run_search(sc, family, cfg.context, cat, cfg.realization);

    write_text(cfg.output_dir / "archive.csv", archive_csv(family, res.archive));
    write_text(cfg.output_dir / "archive.json",
               archive_json(family, cfg.context, sc, cfg.realization, res.archive).dump(1) + "\n");
    write_text(cfg.output_dir / "timeseries.csv", timeseries_csv(res.series));

    SearchReport r;
    r.elites = res.archive.occupied().size();
    r.stats = res.stats;
    r.seeds = res.seeds.size();
    r.mean_tiling_side = res.archive.mean_tiling_side();
    r.archive_csv = cfg.output_dir / "archive.csv";
    r.min_counts.assign(family.size(), 0);
    r.max_counts.assign(family.size(), 0);
    bool first = true;
    for (const ArchiveCell* cell : res.archive.occupied()) {
        const auto& counts = cell->elite->spec.counts;
        for (std::size_t d = 0; d < counts.size(); ++d) {
            r.min_counts[d] = first ? counts[d] : std::min(r.min_counts[d], counts[d]);
            r.max_counts[d] = first ? counts[d] : std::max(r.max_counts[d], counts[d]);
        }
        first = false;
    }
    write_text(cfg.output_dir / "stats.json", to_json(r).dump(2) + "\n");

    if (cfg.export_edges) {
        const fs::path dir = cfg.output_dir / "elites";
        fs::create_directories(dir);
        for (const ArchiveCell* cell : res.archive.leaves()) {
            if (!cell->elite) continue;
            RealizationConfig rc = cfg.realization;
            rc.rng_seed = cell->elite->realization_seed;
            const RealizationReport rep = realize(family, cell->elite->spec, rc);
            if (!rep.ok()) throw RuntimeFailure(fmt::format("elite {} did not regenerate", cell->id));
            save_edge_list(*rep.graph, dir / fmt::format("{}.edges", cell->id));
        }
    }
    return r;
}

CompareReport cmd_compare(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.compare.inputs.size() < 2) throw ConfigError("compare needs at least two inputs");
    std::vector<StoredArchive> archives;
    for (const auto& in : cfg.compare.inputs) archives.push_back(StoredArchive::load(in));
    for (std::size_t i = 0; i < archives.size(); ++i) {
        if (archives[i].elites.empty())
            throw RuntimeFailure("archive " + cfg.compare.inputs[i].string() + " is empty");
        if (!(archives[i].context == archives[0].context))
            throw RuntimeFailure("archives were produced for different network contexts");
        if (archives[i].family.hash() != archives[0].family.hash())
            throw RuntimeFailure("archives use different subgraph families");
    }
    prepare_output(cfg, "compare");
    const SubgraphFamily& family = archives[0].family;
    const Count bw = cfg.compare.bin_width;

    CompareReport report;
    std::string discovery = "run,iteration,valid,new_cells,elites\n";
    for (std::size_t i = 0; i < archives.size(); ++i) {
        const fs::path& in = cfg.compare.inputs[i];
        CompareReport::Run run;
        run.label = fs::is_directory(in) ? in.filename().string() : in.parent_path().filename().string();
        if (run.label.empty()) run.label = fmt::format("run{}", i);
        for (const auto& prev : report.runs)
            if (prev.label == run.label) run.label += fmt::format("-{}", i);
        run.mode = archives[i].mode;
        run.networks = archives[i].elites.size();
        run.min_counts = archives[i].elites[0].counts;
        run.max_counts = archives[i].elites[0].counts;
        for (const auto& e : archives[i].elites)
            for (std::size_t d = 0; d < e.counts.size(); ++d) {
                run.min_counts[d] = std::min(run.min_counts[d], e.counts[d]);
                run.max_counts[d] = std::max(run.max_counts[d], e.counts[d]);
            }
        const fs::path ts = (fs::is_directory(in) ? in : in.parent_path()) / "timeseries.csv";
        if (fs::exists(ts)) {
            std::istringstream lines(read_text(ts));
            std::string line;
            std::getline(lines, line);
            while (std::getline(lines, line)) {
                const auto f = split_csv_line(line);
                if (f.size() < 5) throw ParseError("short timeseries row in " + ts.string(), 0);
                discovery += fmt::format("{},{},{},{},{}\n", run.label, f[0], f[3], f[1], f[4]);
                run.valid = std::stoull(f[3]);
            }
        }
        report.runs.push_back(std::move(run));
    }

    std::string summary = "run,mode,networks,valid";
    for (const auto& k : family.kinds()) summary += fmt::format(",min_{0},max_{0}", k.name);
    summary += "\n";
    for (const auto& run : report.runs) {
        summary += fmt::format("{},{},{},{}", run.label, run.mode, run.networks, run.valid);
        for (std::size_t d = 0; d < family.size(); ++d) summary += fmt::format(",{},{}", run.min_counts[d], run.max_counts[d]);
        summary += "\n";
    }

    std::string hist = "run,kind,bin_lo,bin_hi,count\n";
    for (std::size_t d = 0; d < family.size(); ++d) {
        Count top = 0;
        for (const auto& run : report.runs) top = std::max(top, run.max_counts[d]);
        const std::size_t bins = static_cast<std::size_t>(top / bw + 1);
        for (std::size_t i = 0; i < archives.size(); ++i) {
            std::vector<std::size_t> h(bins, 0);
            for (const auto& e : archives[i].elites) ++h[static_cast<std::size_t>(e.counts[d] / bw)];
            for (std::size_t b = 0; b < bins; ++b)
                hist += fmt::format("{},{},{},{},{}\n", report.runs[i].label, family[d].name,
                                    static_cast<Count>(b) * bw, static_cast<Count>(b + 1) * bw - 1, h[b]);
        }
    }
    write_text(cfg.output_dir / "compare_summary.csv", summary);
    write_text(cfg.output_dir / "histograms.csv", hist);
    write_text(cfg.output_dir / "discovery.csv", discovery);
    return report;
}

ContagionReport cmd_contagion(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.contagion.archive.empty()) throw ConfigError("contagion.archive is not set");
    const StoredArchive archive = StoredArchive::load(cfg.contagion.archive);
    if (archive.elites.size() < 2) throw RuntimeFailure("contagion needs an archive with at least two elites");
    prepare_output(cfg, "contagion");

    std::vector<std::size_t> picks;
    if (cfg.contagion.all_elites) {
        for (std::size_t i = 0; i < archive.elites.size(); ++i) picks.push_back(i);
    } else {
        picks = select_diverse(archive.elites, static_cast<std::size_t>(cfg.contagion.ensemble_size));
    }
    std::vector<Graph> graphs;
    ContagionReport report;
    std::string networks = "network_id";
    for (const auto& k : archive.family.kinds()) networks += "," + k.name;
    networks += "\n";
    for (std::size_t i : picks) {
        const StoredElite& e = archive.elites[i];
        graphs.push_back(archive.regenerate(e));
        report.network_ids.push_back(e.id);
        networks += fmt::format("{}", e.id);
        for (Count c : e.counts) networks += fmt::format(",{}", c);
        networks += "\n";
    }
    const std::vector<int> grid = cfg.contagion.grid.values();
    report.range = transition_range(graphs, cfg.contagion.params, grid, cfg.contagion.runs_per_point,
                                    derive_seed(cfg.master_seed, "contagion"));

    std::string results = "network_id,seed_count,replicate,final_size,duration\n";
    std::string profile = "network_id,seed_count,mean_final,mean_duration,var_final,var_duration,combined\n";
    for (std::size_t n = 0; n < graphs.size(); ++n) {
        const auto& tr = report.range.per_network[n];
        for (const auto& run : tr.runs)
            results += fmt::format("{},{},{},{},{}\n", report.network_ids[n], run.seed_count, run.replicate,
                                   run.outcome.final_size, run.outcome.duration);
        for (const auto& p : tr.profile)
            profile += fmt::format("{},{},{},{},{},{},{}\n", report.network_ids[n], p.seed_count,
                                   fmt_double(p.mean_final), fmt_double(p.mean_duration), fmt_double(p.var_final),
                                   fmt_double(p.var_duration), fmt_double(p.combined));
    }
    write_text(cfg.output_dir / "networks.csv", networks);
    write_text(cfg.output_dir / "results.csv", results);
    write_text(cfg.output_dir / "profile.csv", profile);
    write_text(cfg.output_dir / "transition.json", to_json(report).dump(2) + "\n");
    return report;
}

ValidationReport cmd_validate(const RunConfig& cfg, const fs::path& edges) {
    cfg.context.validate();
    if (!fs::exists(edges)) throw ConfigError("edge list not found: " + edges.string());
    const Graph g = load_edge_list(edges, static_cast<std::size_t>(cfg.context.nodes));
    ValidationReport r;
    r.nodes = g.node_count();
    r.edges = g.edge_count();
    r.regular = g.node_count() == static_cast<std::size_t>(cfg.context.nodes) && g.is_regular(cfg.context.degree);
    r.clustering = global_clustering(g);
    r.within_envelope = r.clustering && std::fabs(*r.clustering - cfg.context.clustering) <= kClusteringEnvelope;
    const SubgraphFamily family = cfg.family();
    if (family.is_standard_kinds()) r.census = subgraph_census(g, family).counts;
    return r;
}

// --- reports -----------------------------------------------------------------

json to_json(const CatalogReport& r) {
    json sizes = json::object(), touched = json::object(), support = json::object();
    for (const auto& [k, v] : r.stats.by_size) sizes[std::to_string(k)] = v;
    for (const auto& [k, v] : r.stats.by_enforced) touched[std::to_string(k)] = v;
    for (const auto& [k, v] : r.stats.by_support) support[std::to_string(k)] = v;
    Count lo = r.stats.by_size.empty() ? 0 : r.stats.by_size.begin()->first;
    Count hi = r.stats.by_size.empty() ? 0 : r.stats.by_size.rbegin()->first;
    return {{"entries", r.entries},      {"size_min", lo},          {"size_max", hi},
            {"by_size", sizes},          {"by_touched", touched},   {"by_support", support},
            {"path", r.path.string()}};
}

json to_json(const SearchReport& r) {
    return {{"elites", r.elites},
            {"seeds", r.seeds},
            {"valid", r.stats.realized},
            {"out_of_bounds", r.stats.out_of_bounds},
            {"invalid", r.stats.invalid},
            {"unrealized", r.stats.unrealized},
            {"refined_cells", r.stats.refined_cells},
            {"mean_tiling_side", r.mean_tiling_side},
            {"min_counts", r.min_counts},
            {"max_counts", r.max_counts}};
}

json to_json(const CompareReport& r) {
    json runs = json::array();
    for (const auto& run : r.runs)
        runs.push_back({{"label", run.label},
                        {"mode", run.mode},
                        {"networks", run.networks},
                        {"valid", run.valid},
                        {"min_counts", run.min_counts},
                        {"max_counts", run.max_counts}});
    return {{"runs", runs}};
}

json to_json(const ContagionReport& r) {
    json per = json::array();
    for (std::size_t i = 0; i < r.network_ids.size(); ++i)
        per.push_back({{"network_id", r.network_ids[i]}, {"critical_seed_count", r.range.per_network[i].critical_seed_count}});
    return {{"range", {r.range.lo, r.range.hi}}, {"networks", per}};
}

json to_json(const ValidationReport& r) {
    json j = {{"nodes", r.nodes},
              {"edges", r.edges},
              {"regular", r.regular},
              {"within_envelope", r.within_envelope},
              {"census", r.census},
              {"ok", r.ok()}};
    j["clustering"] = r.clustering ? json(*r.clustering) : json(nullptr);
    return j;
}

}  // namespace netdiv
