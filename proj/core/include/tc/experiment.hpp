#pragma once

#include "tc/oracle.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tc::experiments {

/// Inclusive numeric grid start, start+step, ..., up to stop (within half a step).
struct GridSpec {
    double start = 0.0;
    double step = 0.0;
    double stop = 0.0;
    std::vector<double> points() const;
    static GridSpec parse(const std::string& text);
};

/// Parsed flat key=value configuration ('#' comments, no nesting).
/// Unknown keys are rejected against the experiment registry.
struct Config {
    std::string experiment;
    std::filesystem::path output_dir;

    std::optional<std::string> case_name;
    std::optional<double> theta;
    std::optional<GridSpec> theta_grid;
    std::optional<double> gt;
    std::optional<double> gt_max;
    std::optional<double> gt_step;
    std::optional<std::vector<int>> n_qubits;
    std::optional<double> theta_tilde;
    std::optional<GridSpec> theta_tilde_grid;
    std::optional<double> t_max;
    std::optional<double> t_step;
    std::optional<double> weight_cutoff;
    std::optional<std::size_t> memory_budget;

    static Config parse_file(const std::filesystem::path& path);
    static Config parse_string(const std::string& text);
};

struct ExperimentInfo {
    std::string name;
    std::string description;
    std::vector<std::string> columns;
    std::vector<std::string> required_keys;
    std::vector<std::string> optional_keys;
};

const std::vector<ExperimentInfo>& registry();

/// Validates the config, runs the named experiment, and writes its CSV and
/// companion gnuplot script. Returns the written paths. All computation
/// happens before any file is opened; re-running an identical config yields
/// byte-identical data files.
std::vector<std::filesystem::path> run_experiment(const Config& config);

/// Runs the oracle cross-check battery, prints the report table to `out`,
/// and writes the machine-readable report CSV to `report_path` (even when
/// checks fail). Returns 0 if all checks pass, 2 otherwise.
int verify(bool verbose, std::ostream& out, const std::filesystem::path& report_path,
           const CrossCheckOptions& options = {});

/// 17-significant-digit locale-independent float formatting shared by all
/// CSV output.
std::string format_double(double v);

/// Number of grid workers: TC_ENTANGLE_WORKERS if set, else all hardware threads.
int worker_count();

} // namespace tc::experiments
