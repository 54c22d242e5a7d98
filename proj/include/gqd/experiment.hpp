// experiment.hpp - config-driven batch runner emitting CSV + manifest artifacts

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gqd/correlations.hpp"
#include "gqd/model.hpp"

namespace gqd {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TimeGrid {
    double start = 0.0;
    double end = 10.0;
    double step = 0.01;
    // When set, each sweep point uses min(0.01, 0.2 / max spectral gap) so
    // the fastest Bohr frequency stays resolved as n grows.
    bool auto_step = false;
};

enum class SweepAxis { None, NPhotons, Alpha, Gamma, NAtoms };

std::string to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(const std::string& text);

struct ExperimentConfig {
    SystemConfig system;
    InitialStateParams initial;
    TimeGrid time;
    SweepAxis sweep_axis = SweepAxis::None;
    std::vector<double> sweep_values; // sorted ascending before running
    OptimizerOptions optimizer;
    std::string out_dir = ".";
    std::string name = "run";
    int threads = 0; // 0 = hardware concurrency

    void validate() const; // throws ConfigError
};

struct RunSummary {
    std::string timeseries_path;
    std::string analysis_path;
    std::string manifest_path;
    std::size_t rows = 0;
    double wall_seconds = 0.0;
};

// Runs the full pipeline for every (sweep point, time point), writes
// <name>_timeseries.csv, <name>_analysis.csv and <name>_meta.json under
// out_dir, and returns the artifact paths. Output bytes depend only on the
// config, never on thread count or scheduling.
RunSummary run_experiment(const ExperimentConfig& config);

struct PresetInfo {
    std::string name;
    std::string description;
};

// Bundled configs reproducing the published analyses, fig1 .. fig9.
std::vector<PresetInfo> list_presets();

// A preset may expand to several runs (one per panel); throws ConfigError
// for unknown names.
std::vector<ExperimentConfig> preset_configs(const std::string& name);

// Flat dotted-key config grammar ("system.n_atoms = 2"); '#' starts a
// comment. Unknown keys are rejected.
ExperimentConfig parse_config_file(const std::string& path);

// Applies one "key=value" override on top of an existing config.
void apply_override(ExperimentConfig& config, const std::string& key, const std::string& value);

} // namespace gqd
