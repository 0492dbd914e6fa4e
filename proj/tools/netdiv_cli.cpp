#include "netdiv/netdiv.h"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

int exit_code(nd_status s) {
    switch (s) {
        case ND_OK: return 0;
        case ND_ERR_CONFIG:
        case ND_ERR_PARSE:
        case ND_ERR_NULL_ARG: return kExitConfig;
        default: return kExitRuntime;
    }
}

int report_failure(nd_status s) {
    std::fprintf(stderr, "netdiv: %s\n", nd_last_error());
    return exit_code(s);
}

struct Overrides {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> mode;
    std::optional<std::int64_t> fixed_size;
    std::optional<std::int64_t> iterations;
};

// Owns a config handle built from --config plus flag overrides.
class Config {
public:
    ~Config() { nd_config_free(handle_); }

    nd_status open(const Overrides& o) {
        nd_status s = o.config.empty() ? nd_config_default(&handle_) : nd_config_load(o.config.c_str(), &handle_);
        if (s != ND_OK) return s;
        if (o.seed && (s = nd_config_set_seed(handle_, *o.seed)) != ND_OK) return s;
        if (o.out && (s = nd_config_set_output(handle_, o.out->c_str())) != ND_OK) return s;
        if (o.mode && (s = nd_config_set_mode(handle_, o.mode->c_str())) != ND_OK) return s;
        if (o.fixed_size && (s = nd_config_set_fixed_size(handle_, *o.fixed_size)) != ND_OK) return s;
        if (o.iterations && (s = nd_config_set_iterations(handle_, *o.iterations)) != ND_OK) return s;
        return ND_OK;
    }

    const nd_config* get() const { return handle_; }

private:
    nd_config* handle_ = nullptr;
};

int print_report(nd_status s, char* report) {
    if (s != ND_OK) return report_failure(s);
    if (report) std::printf("%s\n", report);
    nd_string_free(report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structural diversity search over fixed-degree, fixed-clustering networks"};
    app.set_version_flag("--version", std::string(nd_version()));
    app.require_subcommand(1);

    Overrides o;
    app.add_option("--config", o.config, "Run configuration (JSON)")->check(CLI::ExistingFile);
    app.add_option("--seed", o.seed, "Master seed override");
    app.add_option("--out", o.out, "Output directory override");
    app.add_option("--mode", o.mode, "Search mode")->check(CLI::IsMember({"adaptive", "fixed", "random"}));
    app.add_option("--fixed-size", o.fixed_size, "Cell size for fixed mode")->check(CLI::PositiveNumber);
    app.add_option("--iterations", o.iterations, "Search iterations")->check(CLI::NonNegativeNumber);

    auto* catalog = app.add_subcommand("catalog", "Build the exact-mutation catalog");
    auto* search = app.add_subcommand("search", "Run the archive search");
    auto* compare = app.add_subcommand("compare", "Compare completed search outputs");
    auto* contagion = app.add_subcommand("contagion", "Locate contagion transitions on archive networks");
    auto* validate = app.add_subcommand("validate", "Re-check an exported network");
    std::string edges;
    validate->add_option("edges", edges, "Edge list (.edges or .edges.gz)")->required();
    for (auto* sub : {catalog, search, compare, contagion, validate}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    Config cfg;
    if (nd_status s = cfg.open(o); s != ND_OK) return report_failure(s);

    char* report = nullptr;
    int passed = 1;
    nd_status s = ND_OK;
    if (*catalog) {
        s = nd_run_catalog(cfg.get(), &report);
    } else if (*search) {
        s = nd_run_search(cfg.get(), &report);
    } else if (*compare) {
        s = nd_run_compare(cfg.get(), &report);
    } else if (*contagion) {
        s = nd_run_contagion(cfg.get(), &report);
    } else {
        s = nd_run_validate(cfg.get(), edges.c_str(), &passed, &report);
    }
    if (const int code = print_report(s, report); code != 0) return code;
    return passed ? 0 : kExitRuntime;
}
