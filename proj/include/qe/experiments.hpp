#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "qe/lattice.hpp"
#include "qe/report.hpp"

namespace qe {

/// Raised for invalid or inconsistent experiment configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
    std::string experiment;
    int d = 1;
    std::vector<int> N;
    /// Builtin observable name, or "all" for the bessel experiment.
    std::string obs = "half-indicator";
    /// JSON object {"values": {"<N>": [...]}} overriding obs when set.
    std::string obs_file;
    /// "zero", "counterexample" (period 2, values (0, M)), or a JSON file.
    std::string potential = "zero";
    BoundaryMode mode = BoundaryMode::dirichlet;
    double tol = 1e-10;
    std::uint64_t seed = 0;
    double M = 100.0;
    int R = 3;
    /// Skip the block-sum check in the schrodinger experiment.
    bool unchecked = false;
    /// Allow periods beyond 2 in the schrodinger experiment.
    bool exploratory = false;
    /// Output directory; not part of the hashed configuration.
    std::string out = ".";

    /// Merges the keys present in j over the current values.
    void merge_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    std::string hash() const;
    /// Throws ConfigError on unknown experiment, empty or unsorted N list,
    /// out-of-range parameters, or missing files.
    void validate() const;
};

const std::vector<std::string>& experiment_names();

/// Floor under which variance values are indistinguishable from rounding
/// in a basis of the given volume.
double variance_noise_floor(Index volume);

/// Runs the configured experiment. Throws ConfigError on usage errors.
ExperimentReport run(const ExperimentConfig& config);

/// Writes <out>/<experiment>.csv and <out>/<experiment>.json.
void write_outputs(const ExperimentReport& report, const std::string& out_dir);

} // namespace qe
