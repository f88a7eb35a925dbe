#pragma once

// Experiment grid runner, run-length distributions and result export.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "segopt/benchgen.hpp"
#include "segopt/instance_io.hpp"
#include "segopt/optimizer.hpp"

namespace segopt {

namespace fs = std::filesystem;

/// {1, 1e-1, ..., 1e-8, 0}
std::vector<double> default_targets();

/// Grid axes; range-only axes (step size, width) apply to range guiding and
/// sample sizes to random/orthogonal sampling.
struct GridAxes {
    std::vector<DimensionMode> dimension_modes{DimensionMode::single, DimensionMode::multi};
    std::vector<std::string> guiding{"full", "direction-random", "direction-guided",
                                     "range-random", "range-guided"};
    std::vector<double> step_sizes{0.5, 1, 2, 4, 8};
    std::vector<std::int64_t> search_widths{0, 1, 3, 5, 10};
    std::vector<SamplingMode> sampling{SamplingMode::random, SamplingMode::orthogonal,
                                       SamplingMode::exhaustive};
    std::vector<std::size_t> sample_sizes{5, 10, 25, 100};
};

/// Cartesian product of the axes, without axes that do not apply; every
/// config gets `budget`. Order follows the axis order above.
std::vector<OptimizerConfig> expand_grid(const GridAxes& axes, std::uint64_t budget);

struct ExperimentPlan {
    /// Built-in names (x1..x6) or instance file paths.
    std::vector<std::string> instances;
    std::vector<OptimizerConfig> configs;
    std::size_t repetitions = 20;
    std::uint64_t budget = 100'000;
    std::uint64_t base_seed = 0;
    /// Used when generating built-in instances.
    std::uint64_t instance_seed = 0;
    std::size_t rows = 20;
    std::size_t length = 1000;
    std::vector<double> targets = default_targets();

    /// Throws PlanError.
    void validate() const;
};

class PlanError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Plan file: "key = value[, value...]" lines, '#' comments. Keys: instances,
/// repetitions, budget, base_seed, instance_seed, rows, length, targets,
/// dimension_mode, guiding, step_size, search_width, sampling, sample_size.
/// Missing grid axes take the GridAxes defaults.
ExperimentPlan parse_plan(std::istream& in);
ExperimentPlan load_plan(const fs::path& path);

/// Stable per-run seed from (base seed, instance, config id, repetition).
std::uint64_t cell_seed(std::uint64_t base_seed, std::string_view instance,
                        std::string_view config_id, std::size_t repetition);

/// Largest candidate batch a config can produce in one iteration on length-N
/// vectors; exhaustive configs above the budget are skipped.
std::uint64_t worst_case_batch(const OptimizerConfig& cfg, std::size_t length);
bool cell_feasible(const OptimizerConfig& cfg, std::size_t length);

struct RunRecord {
    std::string instance;
    OptimizerConfig config;  // seed holds the cell seed
    std::size_t repetition = 0;
    RunTrace trace;

    bool operator==(const RunRecord& o) const {
        return instance == o.instance && config.id() == o.config.id() &&
               config.seed == o.config.seed && config.budget == o.config.budget &&
               repetition == o.repetition && trace == o.trace;
    }
};

struct SkippedCell {
    std::string instance;
    std::string config_id;
    std::string reason;
};

struct ExperimentResult {
    std::vector<RunRecord> runs;  // sorted by (instance, config id, repetition)
    std::vector<SkippedCell> skipped;
    std::vector<SkippedCell> errors;
};

struct ExperimentOptions {
    /// When set, each finished run is persisted as <dir>/traces/<key>.json.
    std::optional<fs::path> out_dir;
    /// Reuse persisted traces instead of re-running their cells.
    bool resume = false;
    /// 0 uses the OpenMP default.
    int jobs = 0;
};

/// Runs every feasible (instance, config, repetition) cell.
ExperimentResult run_experiment(const ExperimentPlan& plan, const ExperimentOptions& opts = {});

/// Resolves a plan instance reference (built-in name or file path).
InstanceFile resolve_instance(const ExperimentPlan& plan, const std::string& ref);

// --- traces ------------------------------------------------------------------

std::string trace_file_key(const RunRecord& r);
void save_run(const fs::path& path, const RunRecord& r);
RunRecord load_run(const fs::path& path);
/// Every *.json run file in `dir`, sorted by (instance, config id, repetition).
std::vector<RunRecord> load_runs(const fs::path& dir);

// --- run-length distributions ------------------------------------------------

struct RLDPoint {
    std::uint64_t evaluations;
    double proportion;
    bool operator==(const RLDPoint&) const = default;
};

struct RLDCurve {
    std::vector<double> targets;
    std::vector<RLDPoint> points;  // (0, p0), every change, and the largest run length
    bool operator==(const RLDCurve&) const = default;

    /// Step-function value at `evaluations`.
    double at(std::uint64_t evaluations) const;
};

/// First evaluation count at which the trace reaches `target`, if ever.
std::optional<std::uint64_t> solve_point(const RunTrace& t, double target);

/// Fraction of (trace, target) pairs solved within e evaluations, for every e.
/// Targets must be sorted descending.
RLDCurve compute_rld(const std::vector<const RunTrace*>& traces, const std::vector<double>& targets);
RLDCurve compute_rld(const std::vector<RunTrace>& traces, const std::vector<double>& targets);

enum class GroupBy { config, instance, dimension_mode, guiding, sampling, instance_config };
std::optional<GroupBy> parse_group_by(std::string_view s) noexcept;
std::string group_key(const RunRecord& r, GroupBy g);

std::map<std::string, RLDCurve> rld_by_group(const std::vector<RunRecord>& runs,
                                             const std::vector<double>& targets, GroupBy g);

/// Long-format CSV: series,evaluations,proportion.
void write_plot_data(std::ostream& out, const std::map<std::string, RLDCurve>& curves);
void emit_plot_data(const std::map<std::string, RLDCurve>& curves, const fs::path& path);

// --- result table ------------------------------------------------------------

struct ResultRow {
    std::string instance;
    std::string config_id;
    std::string guiding;
    bool guided = false;
    double step_size = 0.0;
    std::int64_t search_width = 0;
    std::string sampling;
    std::size_t sample_size = 0;
    std::string dimension_mode;
    std::size_t repetition = 0;
    std::uint64_t seed = 0;
    std::uint64_t total_evaluations = 0;
    double best_objective = 0.0;
    std::vector<std::optional<std::uint64_t>> solve_evals;  // one per target

    bool operator==(const ResultRow&) const = default;
};

struct ResultTable {
    std::vector<double> targets;
    std::vector<ResultRow> rows;
    bool operator==(const ResultTable&) const = default;
};

ResultTable make_table(const std::vector<RunRecord>& runs, const std::vector<double>& targets);

enum class ExportFormat { csv, json };
void write_table(std::ostream& out, const ResultTable& t, ExportFormat f);
ResultTable read_table(std::istream& in, ExportFormat f);
/// Throws std::runtime_error with the path in the message on I/O failure.
void export_results(const ResultTable& t, ExportFormat f, const fs::path& path);
ResultTable import_results(const fs::path& path, ExportFormat f);

}  // namespace segopt
