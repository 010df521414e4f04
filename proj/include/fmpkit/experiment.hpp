#pragma once

#include <filesystem>
#include <iosfwd>

#include "fmpkit/ris.hpp"

namespace fmpkit {

enum class Method { framework, gda, dinkelbach, both };

std::string to_string(Method method);
std::optional<Method> parse_method(const std::string& name);

/// Parsed and validated experiment description. Defaults reproduce the
/// reference simulation setup (channel model constants, blocklength 256,
/// error probability 1e-5, 20 reflecting elements) so an empty file is a
/// valid RIS-less baseline configuration.
struct ExperimentConfig {
    ProblemKind problem = ProblemKind::sum_delay;
    Method method = Method::framework;
    int users = 2;
    int bs_antennas = 4;
    int user_antennas = 3;
    int streams = 1;
    std::vector<double> power_dbw = {0.0, 5.0, 10.0};
    SystemParams params;    // total_power is set per sweep point
    ChannelParams channel;  // antenna counts mirrored from above
    bool ris_enabled = false;
    RisConfig ris;
    RisMode ris_mode = RisMode::optimized;
    int trials = 1;
    std::uint64_t seed = 1;
    double tolerance = 1e-4;
    int max_iterations = 200;
    std::string output_dir = "out";

    std::uint64_t hash = 0;  // stable across runs for identical settings
};

/// Parses a config from JSON text. Throws ConfigInvalid with the offending
/// field path on schema violations (unknown keys included).
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);
std::string config_hash_hex(const ExperimentConfig& config);

/// Refreshes the stored hash after programmatic edits (e.g. a seed override).
void recompute_hash(ExperimentConfig& config);

struct ResultRecord {
    int trial = 0;
    int power_index = 0;
    double power_dbw = 0.0;
    std::string method;
    bool ok = true;
    std::string error;
    double objective = 0.0;
    int iterations = 0;
    int w_updates = 0;
    bool converged = false;
    MetricSnapshot metrics;
    double sum_rate = 0.0;
    double sum_delay = 0.0;
    double min_ee = 0.0;
    double gee = 0.0;
    std::string trace_name;
    std::vector<double> trace;
};

struct ExperimentOutcome {
    std::vector<ResultRecord> records;
    int failures = 0;
    std::filesystem::path results_csv;
    std::filesystem::path summary_csv;
    std::filesystem::path trace_dir;
};

/// Runs every (power point, trial, method) cell, writes results.csv,
/// summary.csv and one trace file per run. Trials may fan out over `jobs`
/// workers; outputs are byte-identical regardless of scheduling because
/// per-trial seeds derive from (seed, trial) and rows are written in a
/// fixed order.
ExperimentOutcome run_experiment(const ExperimentConfig& config, const std::string& out_dir,
                                 int jobs = 1);

/// Re-reads the emitted trace files and verifies the direction-appropriate
/// monotonicity of every run. Returns false when any trace regresses.
bool self_check_traces(const ExperimentConfig& config, const ExperimentOutcome& outcome);

}  // namespace fmpkit
