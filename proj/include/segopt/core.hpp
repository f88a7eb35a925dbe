#pragma once

// Segment optimization problem: datasets, windows, aggregation functions and
// the budget-counted objective.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace segopt {

/// Row-major M x N matrix of finite reals.
class VectorDataset {
public:
    VectorDataset() = default;
    /// Throws std::invalid_argument on ragged rows, M < 1, N < 2 or
    /// non-finite values.
    explicit VectorDataset(const std::vector<std::vector<double>>& rows);
    VectorDataset(std::size_t rows, std::size_t length, std::vector<double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t length() const noexcept { return length_; }

    std::span<const double> row(std::size_t i) const noexcept {
        return {values_.data() + i * length_, length_};
    }
    std::span<const double> values() const noexcept { return values_; }

    bool operator==(const VectorDataset&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t length_ = 0;
    std::vector<double> values_;
};

/// Inclusive index pair [start, end]. start <= end holds by construction.
class Window {
public:
    Window(std::size_t start, std::size_t end);

    std::size_t start() const noexcept { return start_; }
    std::size_t end() const noexcept { return end_; }
    std::size_t width() const noexcept { return end_ - start_ + 1; }

    bool fits(std::size_t length) const noexcept { return end_ < length; }

    auto operator<=>(const Window&) const = default;

private:
    std::size_t start_;
    std::size_t end_;
};

enum class Aggregation { mean, sum, min, max, stddev, median };

std::string_view to_string(Aggregation a) noexcept;
std::optional<Aggregation> parse_aggregation(std::string_view name) noexcept;

/// Elements start..end (inclusive). The window must fit the row.
std::span<const double> slice_window(std::span<const double> row, Window w);

/// Reduces a non-empty slice. Sums run left to right; stddev is the
/// population form; median of an even slice averages the central pair.
double aggregate(std::span<const double> slice, Aggregation f);

/// Thrown when an objective call would exceed the run's budget.
class BudgetExhausted : public std::runtime_error {
public:
    BudgetExhausted() : std::runtime_error("evaluation budget exhausted") {}
};

class EvaluationCounter {
public:
    explicit EvaluationCounter(std::uint64_t budget);

    std::uint64_t used() const noexcept { return used_; }
    std::uint64_t budget() const noexcept { return budget_; }
    std::uint64_t remaining() const noexcept { return budget_ - used_; }
    bool exhausted() const noexcept { return used_ >= budget_; }

    /// Reserves n evaluations or throws BudgetExhausted without consuming any.
    void charge(std::uint64_t n = 1);

private:
    std::uint64_t used_ = 0;
    std::uint64_t budget_;
};

class SegmentProblem {
public:
    SegmentProblem(std::string name, VectorDataset dataset, Aggregation aggregation,
                   Window reference);

    const std::string& name() const noexcept { return name_; }
    const VectorDataset& dataset() const noexcept { return dataset_; }
    Aggregation aggregation() const noexcept { return aggregation_; }
    Window reference() const noexcept { return reference_; }
    std::span<const double> reference_aggregates() const noexcept { return reference_aggregates_; }
    std::size_t length() const noexcept { return dataset_.length(); }
    std::size_t rows() const noexcept { return dataset_.rows(); }

    /// Number of valid windows, N(N+1)/2.
    std::uint64_t window_count() const noexcept {
        const std::uint64_t n = length();
        return n * (n + 1) / 2;
    }

private:
    std::string name_;
    VectorDataset dataset_;
    Aggregation aggregation_;
    Window reference_;
    std::vector<double> reference_aggregates_;
};

/// Sum of squared aggregate deviations from the reference. Not counted.
double evaluate(const SegmentProblem& p, Window w);

/// Counted objective: charges exactly one evaluation, then evaluates.
double objective(const SegmentProblem& p, Window w, EvaluationCounter& counter);

struct ScoredWindow {
    Window window;
    double value;
};

/// Exhaustive enumeration of every valid window, ties broken by smaller start
/// then smaller end. Guarded to N <= 2000.
ScoredWindow brute_force_optimum(const SegmentProblem& p);

inline constexpr std::size_t brute_force_max_length = 2000;

}  // namespace segopt
