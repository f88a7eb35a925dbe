#pragma once

#include <cstdint>
#include <functional>

#include "segopt/core.hpp"

namespace segopt {

enum class Dimension { start, end };

/// Which window indices an iteration optimizes.
struct DimensionSet {
    bool start = false;
    bool end = false;

    bool contains(Dimension d) const noexcept { return d == Dimension::start ? start : end; }
    bool empty() const noexcept { return !start && !end; }
    int size() const noexcept { return int(start) + int(end); }

    static DimensionSet only(Dimension d) noexcept {
        return d == Dimension::start ? DimensionSet{true, false} : DimensionSet{false, true};
    }
    static DimensionSet both() noexcept { return {true, true}; }
};

struct IndexRange {
    std::int64_t lo;
    std::int64_t hi;

    std::int64_t clamp(std::int64_t k) const noexcept { return k < lo ? lo : (k > hi ? hi : k); }
    bool contains(std::int64_t k) const noexcept { return lo <= k && k <= hi; }
    std::uint64_t size() const noexcept { return static_cast<std::uint64_t>(hi - lo + 1); }
    bool operator==(const IndexRange&) const = default;
};

/// Valid range of `d` with the other index held at its value in `w`:
/// start in [0, end], end in [start, N-1].
IndexRange valid_range(Window w, Dimension d, std::size_t length) noexcept;

/// `w` with dimension `d` replaced by `k` (k must lie in valid_range).
Window with_index(Window w, Dimension d, std::int64_t k);

/// Five-point stencil at unit spacing on a function of one integer index:
///   (g(x-2) - 8 g(x-1) + 8 g(x+1) - g(x+2)) / 12
/// Points outside `range` are clamped into it; each distinct clamped point is
/// evaluated once. Returns the derivative and the number of calls made.
struct StencilResult {
    double derivative;
    int evaluations;
};
StencilResult five_point_stencil(const std::function<double(std::int64_t)>& g, std::int64_t x,
                                 IndexRange range);

/// Stencil of the objective along one dimension, other index fixed. Every
/// distinct point is charged to `counter`; running out mid-stencil throws
/// BudgetExhausted (already-charged points stay charged).
double stencil_derivative(const SegmentProblem& p, Window w, Dimension d,
                          EvaluationCounter& counter);

struct GradientEstimate {
    double d_start = 0.0;
    double d_end = 0.0;
    int evaluations_spent = 0;

    double along(Dimension d) const noexcept { return d == Dimension::start ? d_start : d_end; }
};

/// Stencil per requested dimension; dimensions not requested report 0.
GradientEstimate estimate_gradient(const SegmentProblem& p, Window w, DimensionSet dims,
                                   EvaluationCounter& counter);

}  // namespace segopt
