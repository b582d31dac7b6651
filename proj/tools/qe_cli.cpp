// Experiment driver. Exit status: 0 when every assertion passes, 2 when at
// least one fails, 1 on usage or configuration errors.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qe/experiments.hpp"

namespace {

struct Flags {
    std::string config;
    int d = 1;
    std::vector<int> N;
    std::string obs, obs_file, potential, mode, out;
    double tol = 0.0, M = 0.0;
    std::uint64_t seed = 0;
    int R = 0;
    bool unchecked = false, exploratory = false;
};

struct Options {
    CLI::Option *d, *N, *obs, *obs_file, *potential, *mode, *out, *tol, *M, *seed, *R, *unchecked, *exploratory;
};

Options add_flags(CLI::App& app, Flags& f)
{
    Options o{};
    app.add_option("--config", f.config, "JSON config file; flags override its entries")->check(CLI::ExistingFile);
    o.d = app.add_option("--d", f.d, "lattice dimension");
    o.N = app.add_option("--N", f.N, "ascending comma-separated list of box sizes")->delimiter(',');
    o.obs = app.add_option("--obs", f.obs, "builtin observable (half-indicator, single-site, parity, "
                                           "block-constant, random-diagonal; 'all' for bessel)");
    o.obs_file = app.add_option("--obs-file", f.obs_file, "observable values per N as JSON");
    o.potential = app.add_option("--potential", f.potential, "zero, counterexample, or a potential JSON file");
    o.mode = app.add_option("--mode", f.mode, "boundary mode")->check(CLI::IsMember({"dirichlet", "periodic"}));
    o.out = app.add_option("--out", f.out, "output directory");
    o.tol = app.add_option("--tol", f.tol, "numerical tolerance");
    o.M = app.add_option("--M", f.M, "counterexample potential height");
    o.seed = app.add_option("--seed", f.seed, "seed for randomized observables");
    o.R = app.add_option("--R", f.R, "correlator range");
    o.unchecked = app.add_flag("--unchecked", f.unchecked, "skip the block-sum check (schrodinger)");
    o.exploratory = app.add_flag("--exploratory", f.exploratory, "allow periods beyond 2 (schrodinger)");
    return o;
}

qe::ExperimentConfig build_config(const std::string& name, const Flags& f, const Options& o)
{
    qe::ExperimentConfig c;
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw qe::ConfigError(std::string("malformed config file: ") + e.what());
        }
        c.merge_json(j);
        if (!c.experiment.empty() && c.experiment != name)
            throw qe::ConfigError("config names experiment '" + c.experiment + "' but '" + name + "' was requested");
    }
    c.experiment = name;
    if (o.d->count())
        c.d = f.d;
    if (o.N->count())
        c.N = f.N;
    if (o.obs->count())
        c.obs = f.obs;
    if (o.obs_file->count())
        c.obs_file = f.obs_file;
    if (o.potential->count())
        c.potential = f.potential;
    if (o.mode->count())
        c.mode = qe::parse_boundary_mode(f.mode);
    if (o.out->count())
        c.out = f.out;
    if (o.tol->count())
        c.tol = f.tol;
    if (o.M->count())
        c.M = f.M;
    if (o.seed->count())
        c.seed = f.seed;
    if (o.R->count())
        c.R = f.R;
    if (o.unchecked->count())
        c.unchecked = f.unchecked;
    if (o.exploratory->count())
        c.exploratory = f.exploratory;
    return c;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Quantum ergodicity experiments on lattice boxes"};
    app.require_subcommand(1);
    Flags flags;
    std::vector<std::pair<CLI::App*, Options>> subs;
    for (const auto& name : qe::experiment_names())
        subs.emplace_back(nullptr, Options{});
    for (std::size_t i = 0; i < subs.size(); ++i) {
        subs[i].first = app.add_subcommand(qe::experiment_names()[i]);
        subs[i].second = add_flags(*subs[i].first, flags);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        for (const auto& [sub, opts] : subs) {
            if (!sub->parsed())
                continue;
            const qe::ExperimentConfig config = build_config(sub->get_name(), flags, opts);
            const auto start = std::chrono::steady_clock::now();
            const qe::ExperimentReport report = qe::run(config);
            qe::write_outputs(report, config.out);
            const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
            std::cerr << report.experiment << ": " << report.rows.size() << " rows, config " << report.config_hash()
                      << ", " << elapsed.count() << " s, " << (report.all_passed() ? "pass" : "FAIL") << '\n';
            for (const auto& a : report.assertions)
                if (!a.passed)
                    std::cerr << "  failed: " << a.name << " (" << a.detail << ")\n";
            return report.all_passed() ? 0 : 2;
        }
    } catch (const qe::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
