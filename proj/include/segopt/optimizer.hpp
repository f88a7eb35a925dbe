#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "segopt/core.hpp"
#include "segopt/kernels.hpp"
#include "segopt/strategies.hpp"

namespace segopt {

enum class DimensionMode { single, multi };

std::string_view to_string(DimensionMode m) noexcept;
std::optional<DimensionMode> parse_dimension_mode(std::string_view s) noexcept;

struct OptimizerConfig {
    GuidingConfig guiding;
    SamplingConfig sampling;
    DimensionMode dimension_mode = DimensionMode::multi;
    std::uint64_t budget = 100'000;
    std::uint64_t seed = 0;

    void validate() const;

    /// Canonical strategy identifier, e.g. "multi_range-guided_s2_w3_random_k25".
    /// Budget and seed are not part of it.
    std::string id() const;
};

/// Guiding label used in tables: "full", "direction-random", "range-guided", ...
std::string guiding_label(const GuidingConfig& g);
/// Inverse of guiding_label; step size and width keep their defaults.
std::optional<GuidingConfig> parse_guiding_label(std::string_view label);

struct Improvement {
    std::uint64_t evaluations_used;
    double best_objective;
    Window best_window;

    bool operator==(const Improvement&) const = default;
};

struct RunTrace {
    std::vector<Improvement> improvements;
    std::uint64_t total_evaluations = 0;
    std::uint64_t stencil_evaluations = 0;
    std::uint64_t candidate_evaluations = 0;
    std::uint64_t iterations = 0;
    bool stalled = false;

    const Improvement& final_best() const { return improvements.back(); }
    bool operator==(const RunTrace&) const = default;
};

/// multi: both indices every iteration; single: start on even iterations, end
/// on odd ones.
DimensionSet select_dimensions(DimensionMode mode, std::uint64_t iteration) noexcept;

/// Clamps both indices into [0, N-1] and swaps them if start > end.
Window clamp_candidate(std::int64_t start, std::int64_t end, std::size_t length);

/// Uniform over all N(N+1)/2 windows.
Window initial_window(std::size_t length, Rng& rng);

/// Consecutive zero-cost iterations after which a run is declared stalled.
inline constexpr std::uint64_t idle_iteration_limit = 10'000;

/// Budgeted guide/sample/select loop. Starts from a random window, adopts the
/// best candidate of each iteration when strictly better than the incumbent,
/// and stops when the budget is spent. `exec` only affects how a candidate
/// batch is evaluated; results are identical for both.
RunTrace optimize(const SegmentProblem& p, const OptimizerConfig& cfg,
                  Execution exec = Execution::serial);

}  // namespace segopt
