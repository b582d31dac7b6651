#include "qe/experiments.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>

#include "qe/correlators.hpp"
#include "qe/correspondence.hpp"
#include "qe/observables.hpp"
#include "qe/parallel.hpp"
#include "qe/schrodinger.hpp"
#include "qe/spectra.hpp"
#include "qe/time_average.hpp"

namespace qe {

namespace {

using nlohmann::json;

bool is_builtin_potential(const std::string& name) { return name == "zero" || name == "counterexample"; }

PeriodicPotential load_potential(const ExperimentConfig& c)
{
    if (c.potential == "zero")
        return PeriodicPotential::zero(c.d);
    if (c.potential == "counterexample")
        return PeriodicPotential::alternating(c.M);
    try {
        PeriodicPotential V = PeriodicPotential::load(c.potential);
        if (V.dim() != c.d)
            throw ConfigError("potential dimension does not match --d");
        return V;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

// Observable on Lambda_N for the given periods, from the builtin name or the
// observable file.
Observable load_observable(const ExperimentConfig& c, const std::vector<int>& periods, int N)
{
    if (c.obs_file.empty()) {
        try {
            return make_builtin_observable(c.obs, periods, N, c.seed);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    std::ifstream in(c.obs_file);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("malformed observable file: " + std::string(e.what()));
    }
    const std::string key = std::to_string(N);
    if (!j.contains("values") || !j["values"].contains(key))
        throw ConfigError("observable file has no values for N=" + key);
    const auto values = j["values"][key].get<std::vector<double>>();
    const LatticeBox box = truncation_box(periods, N);
    if (static_cast<Index>(values.size()) != box.volume())
        throw ConfigError("observable file values for N=" + key + " do not match the box volume");
    return Observable::diagonal(box, Eigen::Map<const Eigen::VectorXd>(values.data(), box.volume()).eval());
}

SpectralData basis_for(const ExperimentConfig& c, int N)
{
    return c.mode == BoundaryMode::dirichlet ? dirichlet_basis(N, c.d) : periodic_basis(N, c.d);
}

std::string join_ints(const std::vector<int>& v, const std::string& sep)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? sep : "") + std::to_string(v[i]);
    return out;
}

std::string theta_label(const Frequency& t, int N)
{
    std::string out;
    for (std::size_t i = 0; i < t.size(); ++i)
        out += (i ? ";" : "") + std::to_string(t[i]) + "/" + std::to_string(N + 1);
    return out;
}

template <class Row, class F>
std::vector<Row> per_N(const std::vector<int>& Ns, F&& f)
{
    std::vector<std::optional<Row>> slots(Ns.size());
    parallel_for(Ns.size(), [&](std::size_t i) { slots[i].emplace(f(Ns[i])); });
    std::vector<Row> out;
    for (auto& s : slots)
        out.push_back(std::move(*s));
    return out;
}

bool non_increasing(const std::vector<double>& v, const std::vector<double>& floors)
{
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[i - 1] + floors[i])
            return false;
    return true;
}

ExperimentReport var_scan(const ExperimentConfig& c)
{
    struct Row {
        double var, bound, floor;
    };
    const std::vector<int> ones(static_cast<std::size_t>(c.d), 1);
    const auto rows = per_N<Row>(c.N, [&](int N) {
        const Observable a = load_observable(c, ones, N);
        const double var = quantum_variance(basis_for(c, N), centered(a));
        return Row{var, variance_decay_bound(N, c.d, a.sup_norm()), variance_noise_floor(a.box().volume())};
    });

    ExperimentReport r;
    r.columns = {"N", "var", "var_times_N", "bound", "pass"};
    std::vector<double> vars, floors;
    double max_scaled = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const int N = c.N[i];
        r.add_row({std::int64_t{N}, rows[i].var, rows[i].var * N, rows[i].bound, rows[i].var <= rows[i].bound});
        vars.push_back(rows[i].var);
        floors.push_back(rows[i].floor);
        max_scaled = std::max(max_scaled, rows[i].var * N);
    }
    r.summary["max_var_times_N"] = max_scaled;
    r.summary["bound_times_N"] = variance_decay_bound(1, c.d, 1.0);
    r.check("var_non_increasing", non_increasing(vars, floors), "var(N) <= var(previous N) + rounding floor");
    return r;
}

ExperimentReport degeneracy(const ExperimentConfig& c)
{
    struct Row {
        Index volume, classes, max_class, degenerate;
        bool permutation_ok;
    };
    const auto rows = per_N<Row>(c.N, [&](int N) {
        const SpectralData b = basis_for(c, N);
        std::vector<Index> class_of(static_cast<std::size_t>(b.size()));
        Row row{b.size(), static_cast<Index>(b.classes.size()), 0, 0, true};
        for (std::size_t ci = 0; ci < b.classes.size(); ++ci) {
            row.max_class = std::max<Index>(row.max_class, static_cast<Index>(b.classes[ci].size()));
            if (b.classes[ci].size() > 1)
                ++row.degenerate;
            for (Index j : b.classes[ci])
                class_of[static_cast<std::size_t>(j)] = static_cast<Index>(ci);
        }
        std::map<MultiIndex, Index> index_of;
        for (Index j = 0; j < b.size(); ++j)
            index_of[b.frequencies[static_cast<std::size_t>(j)]] = j;
        for (Index j = 0; j < b.size(); ++j) {
            for (int l = 0; l + 1 < c.d; ++l) {
                MultiIndex k = b.frequencies[static_cast<std::size_t>(j)];
                std::swap(k[static_cast<std::size_t>(l)], k[static_cast<std::size_t>(l + 1)]);
                if (class_of[static_cast<std::size_t>(index_of.at(k))] != class_of[static_cast<std::size_t>(j)])
                    row.permutation_ok = false;
            }
        }
        return row;
    });

    ExperimentReport r;
    r.columns = {"N", "volume", "classes", "max_class_size", "degenerate_classes", "pass"};
    for (std::size_t i = 0; i < rows.size(); ++i)
        r.add_row({std::int64_t{c.N[i]}, std::int64_t{rows[i].volume}, std::int64_t{rows[i].classes},
                   std::int64_t{rows[i].max_class}, std::int64_t{rows[i].degenerate}, rows[i].permutation_ok});
    return r;
}

ExperimentReport lemma_c1(const ExperimentConfig& c)
{
    struct Entry {
        Frequency theta;
        SignVector eps, epsp;
        std::int64_t count;
    };
    const auto signs = sign_vectors(c.d);
    const auto tables = per_N<std::vector<Entry>>(c.N, [&](int N) {
        std::vector<Entry> out;
        for (const Frequency& t : frequency_grid(N, c.d)) {
            if (std::all_of(t.begin(), t.end(), [](int v) { return v == 0; }))
                continue;
            for (const auto& e : signs)
                for (const auto& ep : signs)
                    out.push_back({t, e, ep, lemma_c1_count(N, c.d, t, e, ep)});
        }
        return out;
    });

    ExperimentReport r;
    r.columns = {"N", "theta", "eps", "epsp", "count", "bound", "pass"};
    std::int64_t violations = 0, max_count = 0;
    for (std::size_t i = 0; i < tables.size(); ++i) {
        const int N = c.N[i];
        const std::int64_t bound = lemma_c1_bound(N, c.d);
        for (const auto& e : tables[i]) {
            const bool ok = e.count <= bound;
            violations += ok ? 0 : 1;
            max_count = std::max(max_count, e.count);
            r.add_row({std::int64_t{N}, theta_label(e.theta, N), join_ints(e.eps, ";"), join_ints(e.epsp, ";"),
                       e.count, bound, ok});
        }
    }
    r.summary["violations"] = violations;
    r.summary["max_count"] = max_count;
    return r;
}

ExperimentReport correspond(const ExperimentConfig& c)
{
    const auto certs = per_N<CorrespondenceCertificate>(c.N, [&](int N) { return certify_dirichlet_basis(N, c.d); });
    ExperimentReport r;
    r.columns = {"N", "max_residual", "gram_error", "inclusion_error", "pass"};
    CorrespondenceCertificate worst;
    for (std::size_t i = 0; i < certs.size(); ++i) {
        const auto& k = certs[i];
        r.add_row({std::int64_t{c.N[i]}, k.max_residual, k.gram_error, k.inclusion_error,
                   k.max_residual <= c.tol && k.gram_error <= c.tol && k.inclusion_error <= c.tol});
        worst.max_residual = std::max(worst.max_residual, k.max_residual);
        worst.gram_error = std::max(worst.gram_error, k.gram_error);
        worst.inclusion_error = std::max(worst.inclusion_error, k.inclusion_error);
    }
    r.summary["max_residual"] = worst.max_residual;
    r.summary["gram_error"] = worst.gram_error;
    r.summary["inclusion_error"] = worst.inclusion_error;
    return r;
}

ExperimentReport schrodinger(const ExperimentConfig& c)
{
    const PeriodicPotential V = load_potential(c);
    const bool counterexample = c.potential == "counterexample";
    double vmax = 0.0;
    for (double v : V.values)
        vmax = std::max(vmax, std::abs(v));

    struct Row {
        PartialQeResult qe;
        std::optional<MassProfile> mass;
        double floor, scale;
    };
    const auto rows = per_N<Row>(c.N, [&](int N) {
        const Observable a = load_observable(c, V.periods, N);
        PartialQeOptions opt;
        opt.check_block_condition = !c.unchecked;
        opt.allow_long_periods = c.exploratory;
        Row row;
        try {
            row.qe = partial_qe_experiment(V, N, a, opt);
        } catch (const UnsupportedPeriod& e) {
            throw ConfigError(e.what());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        if (counterexample)
            row.mass = counterexample_mass_profile(c.M, N);
        row.floor = variance_noise_floor(a.box().volume());
        row.scale = std::sqrt(static_cast<double>(a.box().volume())) * (vmax + 2.0 * c.d);
        return row;
    });

    ExperimentReport r;
    r.columns = {"N",          "var",         "var_times_N",       "block_condition",   "eigen_residual",
                 "low_count",  "high_count",  "max_low_even_mass", "max_high_odd_mass", "mass_bound",
                 "pass"};
    std::vector<double> vars, floors;
    bool all_block = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const int N = c.N[i];
        const auto& row = rows[i];
        bool ok = row.qe.eigen_residual <= c.tol * row.scale;
        std::vector<Cell> cells{std::int64_t{N}, row.qe.variance, row.qe.variance * N, row.qe.block_condition,
                                row.qe.eigen_residual};
        if (row.mass) {
            ok = ok && row.mass->passed(N);
            cells.insert(cells.end(), {std::int64_t{row.mass->low_band_count}, std::int64_t{row.mass->high_band_count},
                                       row.mass->max_low_even_mass, row.mass->max_high_odd_mass, row.mass->bound});
        } else {
            cells.insert(cells.end(), {std::string(), std::string(), std::string(), std::string(), std::string()});
        }
        cells.push_back(ok);
        r.add_row(std::move(cells));
        vars.push_back(row.qe.variance);
        floors.push_back(row.floor);
        all_block = all_block && row.qe.block_condition;
    }
    r.summary["potential"] = V.to_json();
    const bool long_periods = std::any_of(V.periods.begin(), V.periods.end(), [](int q) { return q > 2; });
    if (all_block && !long_periods)
        r.check("var_non_increasing", non_increasing(vars, floors), "var(N) <= var(previous N) + rounding floor");
    return r;
}

ExperimentReport correlator_scan(const ExperimentConfig& c)
{
    ExperimentReport r;
    if (c.d == 1) {
        const auto rows = wucha_error_scan(c.N, c.R);
        r.columns = {"N", "z", "max_error", "error_times_N", "bound", "pass"};
        for (const auto& w : rows)
            r.add_row({std::int64_t{w.N}, std::int64_t{w.z}, w.max_error, w.error_times_N, w.bound,
                       w.max_error <= w.bound + 1e-12});

        const auto errors = per_N<double>(c.N, [](int N) {
            double worst = 0.0;
            for (int j = 1; j <= N; ++j) {
                const Wavefunction s = dirichlet_eigenpair(N, 1, {j}).vector;
                const Complex v = inner(s, translate(s, {1}, BoundaryMode::dirichlet));
                worst = std::max(worst, std::abs(v - std::cos(j * std::numbers::pi / (N + 1))));
            }
            return worst;
        });
        const double worst = *std::max_element(errors.begin(), errors.end());
        r.summary["offset1_identity_error"] = worst;
        r.check("offset1_identity", worst <= 1e-12, "<s_j, rho_1 s_j> = cos(j pi/(N+1))");
        return r;
    }

    r.columns = {"N", "j", "eigenvalue", "correlator_re", "correlator_im", "quadratic_form_re", "quadratic_form_im"};
    struct Entry {
        double lambda;
        Complex corr, quad;
    };
    const auto tables = per_N<std::vector<Entry>>(c.N, [&](int N) {
        const SpectralData b = basis_for(c, N);
        const Observable K = random_kernel(b.box, std::min(c.R, N - 1), c.seed);
        std::vector<Entry> out;
        for (Index j = 0; j < b.size(); ++j) {
            const Wavefunction psi = b.vector(j);
            out.push_back({b.eigenvalues[j], correlator(K, psi, c.mode), inner(psi, K.apply(psi))});
        }
        return out;
    });
    for (std::size_t i = 0; i < tables.size(); ++i)
        for (std::size_t j = 0; j < tables[i].size(); ++j) {
            const auto& e = tables[i][j];
            r.add_row({std::int64_t{c.N[i]}, static_cast<std::int64_t>(j + 1), e.lambda, e.corr.real(), e.corr.imag(),
                       e.quad.real(), e.quad.imag()});
        }
    return r;
}

ExperimentReport bessel(const ExperimentConfig& c)
{
    struct Entry {
        std::string name;
        BesselCheck check;
    };
    const std::vector<int> ones(static_cast<std::size_t>(c.d), 1);
    const auto tables = per_N<std::vector<Entry>>(c.N, [&](int N) {
        std::vector<Entry> out;
        if (c.obs == "all" && c.obs_file.empty()) {
            for (const auto& name : builtin_observable_names())
                out.push_back({name, bessel_bound_check(make_builtin_observable(name, ones, N, c.seed), N, c.d)});
            for (std::uint64_t s = 1; s <= 20; ++s)
                out.push_back({"random-diagonal:" + std::to_string(c.seed + s),
                               bessel_bound_check(random_diagonal(LatticeBox::cube(c.d, N), c.seed + s), N, c.d)});
        } else {
            out.push_back({c.obs_file.empty() ? c.obs : "file", bessel_bound_check(load_observable(c, ones, N), N, c.d)});
        }
        return out;
    });
    ExperimentReport r;
    r.columns = {"N", "obs", "lhs", "rhs", "pass"};
    for (std::size_t i = 0; i < tables.size(); ++i)
        for (const auto& e : tables[i])
            r.add_row({std::int64_t{c.N[i]}, e.name, e.check.lhs, e.check.rhs, e.check.holds()});
    return r;
}

} // namespace

void ExperimentConfig::merge_json(const nlohmann::json& j)
{
    if (!j.is_object())
        throw ConfigError("config must be a JSON object");
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "experiment")
                experiment = value.get<std::string>();
            else if (key == "d")
                d = value.get<int>();
            else if (key == "N")
                N = value.get<std::vector<int>>();
            else if (key == "obs")
                obs = value.get<std::string>();
            else if (key == "obs_file")
                obs_file = value.get<std::string>();
            else if (key == "potential")
                potential = value.get<std::string>();
            else if (key == "mode")
                mode = parse_boundary_mode(value.get<std::string>());
            else if (key == "tol")
                tol = value.get<double>();
            else if (key == "seed")
                seed = value.get<std::uint64_t>();
            else if (key == "M")
                M = value.get<double>();
            else if (key == "R")
                R = value.get<int>();
            else if (key == "unchecked")
                unchecked = value.get<bool>();
            else if (key == "exploratory")
                exploratory = value.get<bool>();
            else if (key == "out")
                out = value.get<std::string>();
            else
                throw ConfigError("unknown config key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

nlohmann::json ExperimentConfig::to_json() const
{
    return {{"experiment", experiment}, {"d", d},           {"N", N},
            {"obs", obs},               {"obs_file", obs_file}, {"potential", potential},
            {"mode", to_string(mode)},  {"tol", tol},       {"seed", seed},
            {"M", M},                   {"R", R},           {"unchecked", unchecked},
            {"exploratory", exploratory}};
}

std::string ExperimentConfig::hash() const { return config_hash(to_json()); }

void ExperimentConfig::validate() const
{
    const auto& names = experiment_names();
    if (std::find(names.begin(), names.end(), experiment) == names.end())
        throw ConfigError("unknown experiment '" + experiment + "'");
    if (d < 1 || d > 3)
        throw ConfigError("d must be 1, 2 or 3");
    if (N.empty())
        throw ConfigError("N list must be nonempty");
    if (!std::is_sorted(N.begin(), N.end()) || std::adjacent_find(N.begin(), N.end()) != N.end())
        throw ConfigError("N list must be strictly ascending");
    if (N.front() < 1)
        throw ConfigError("N values must be positive");
    if (!(tol > 0.0))
        throw ConfigError("tol must be positive");
    if (!obs_file.empty() && !std::filesystem::is_regular_file(obs_file))
        throw ConfigError("observable file '" + obs_file + "' does not exist");
    if (!is_builtin_potential(potential) && !std::filesystem::is_regular_file(potential))
        throw ConfigError("potential '" + potential + "' is neither builtin nor an existing file");
    if (obs_file.empty() && obs != "all") {
        const auto& builtin = builtin_observable_names();
        if (std::find(builtin.begin(), builtin.end(), obs) == builtin.end())
            throw ConfigError("unknown observable '" + obs + "'");
    }
    if (obs == "all" && experiment != "bessel")
        throw ConfigError("obs 'all' is only valid for the bessel experiment");
    if (experiment == "correlator") {
        if (R < 0)
            throw ConfigError("R must be nonnegative");
        if (d == 1 && R > N.front() - 1)
            throw ConfigError("R must not exceed min(N) - 1");
    }
    if (experiment == "schrodinger" && potential == "counterexample") {
        if (d != 1)
            throw ConfigError("the counterexample potential is one-dimensional");
        if (!(M > 4.0))
            throw ConfigError("M must exceed 4");
    }
}

const std::vector<std::string>& experiment_names()
{
    static const std::vector<std::string> names{"var-scan",    "degeneracy", "lemma-c1", "correspond",
                                                "schrodinger", "correlator", "bessel"};
    return names;
}

double variance_noise_floor(Index volume)
{
    const double e = 64.0 * static_cast<double>(volume) * DBL_EPSILON;
    return e * e;
}

ExperimentReport run(const ExperimentConfig& config)
{
    config.validate();
    ExperimentReport r;
    const std::string& e = config.experiment;
    if (e == "var-scan")
        r = var_scan(config);
    else if (e == "degeneracy")
        r = degeneracy(config);
    else if (e == "lemma-c1")
        r = lemma_c1(config);
    else if (e == "correspond")
        r = correspond(config);
    else if (e == "schrodinger")
        r = schrodinger(config);
    else if (e == "correlator")
        r = correlator_scan(config);
    else
        r = bessel(config);
    r.experiment = e;
    r.config = config.to_json();
    return r;
}

void write_outputs(const ExperimentReport& report, const std::string& out_dir)
{
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    const std::filesystem::path base = std::filesystem::path(out_dir) / report.experiment;
    emit_report(report, ReportFormat::csv, base.string() + ".csv");
    emit_report(report, ReportFormat::json, base.string() + ".json");
}

} // namespace qe
