#include "segopt/core.hpp"

#include <algorithm>
#include <cmath>

#include "segopt/kernels.hpp"

namespace segopt {

namespace {

void check_values(std::size_t rows, std::size_t length, const std::vector<double>& values) {
    if (rows < 1) throw std::invalid_argument("dataset needs at least one row");
    if (length < 2) throw std::invalid_argument("dataset vectors need length >= 2");
    if (values.size() != rows * length)
        throw std::invalid_argument("dataset value count does not match M x N");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("dataset contains non-finite values");
}

}  // namespace

VectorDataset::VectorDataset(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw std::invalid_argument("dataset needs at least one row");
    const std::size_t n = rows.front().size();
    std::vector<double> flat;
    flat.reserve(rows.size() * n);
    for (const auto& r : rows) {
        if (r.size() != n) throw std::invalid_argument("dataset rows have different lengths");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    check_values(rows.size(), n, flat);
    rows_ = rows.size();
    length_ = n;
    values_ = std::move(flat);
}

VectorDataset::VectorDataset(std::size_t rows, std::size_t length, std::vector<double> values)
    : rows_(rows), length_(length), values_(std::move(values)) {
    check_values(rows_, length_, values_);
}

Window::Window(std::size_t start, std::size_t end) : start_(start), end_(end) {
    if (start > end) throw std::invalid_argument("window start exceeds end");
}

std::string_view to_string(Aggregation a) noexcept {
    switch (a) {
        case Aggregation::mean: return "mean";
        case Aggregation::sum: return "sum";
        case Aggregation::min: return "min";
        case Aggregation::max: return "max";
        case Aggregation::stddev: return "stddev";
        case Aggregation::median: return "median";
    }
    return "?";
}

std::optional<Aggregation> parse_aggregation(std::string_view name) noexcept {
    for (auto a : {Aggregation::mean, Aggregation::sum, Aggregation::min, Aggregation::max,
                   Aggregation::stddev, Aggregation::median})
        if (to_string(a) == name) return a;
    return std::nullopt;
}

std::span<const double> slice_window(std::span<const double> row, Window w) {
    if (!w.fits(row.size())) throw std::out_of_range("window exceeds row length");
    return row.subspan(w.start(), w.width());
}

double aggregate(std::span<const double> slice, Aggregation f) {
    if (slice.empty()) throw std::invalid_argument("cannot aggregate an empty slice");
    const auto n = static_cast<double>(slice.size());
    switch (f) {
        case Aggregation::sum: {
            double s = 0.0;
            for (double v : slice) s += v;
            return s;
        }
        case Aggregation::mean: {
            double s = 0.0;
            for (double v : slice) s += v;
            return s / n;
        }
        case Aggregation::min: return *std::min_element(slice.begin(), slice.end());
        case Aggregation::max: return *std::max_element(slice.begin(), slice.end());
        case Aggregation::stddev: {
            double s = 0.0;
            for (double v : slice) s += v;
            const double m = s / n;
            double ss = 0.0;
            for (double v : slice) ss += (v - m) * (v - m);
            return std::sqrt(ss / n);
        }
        case Aggregation::median: {
            std::vector<double> tmp(slice.begin(), slice.end());
            const std::size_t mid = tmp.size() / 2;
            std::nth_element(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(mid), tmp.end());
            const double upper = tmp[mid];
            if (tmp.size() % 2 == 1) return upper;
            const double lower =
                *std::max_element(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(mid));
            return (lower + upper) / 2.0;
        }
    }
    throw std::invalid_argument("unknown aggregation");
}

EvaluationCounter::EvaluationCounter(std::uint64_t budget) : budget_(budget) {
    if (budget < 1) throw std::invalid_argument("budget must be >= 1");
}

void EvaluationCounter::charge(std::uint64_t n) {
    if (n > remaining()) throw BudgetExhausted();
    used_ += n;
}

SegmentProblem::SegmentProblem(std::string name, VectorDataset dataset, Aggregation aggregation,
                               Window reference)
    : name_(std::move(name)),
      dataset_(std::move(dataset)),
      aggregation_(aggregation),
      reference_(reference) {
    if (dataset_.rows() == 0) throw std::invalid_argument("problem needs a non-empty dataset");
    if (!reference_.fits(dataset_.length()))
        throw std::invalid_argument("reference window exceeds vector length");
    reference_aggregates_.reserve(dataset_.rows());
    for (std::size_t i = 0; i < dataset_.rows(); ++i)
        reference_aggregates_.push_back(
            aggregate(slice_window(dataset_.row(i), reference_), aggregation_));
}

double evaluate(const SegmentProblem& p, Window w) {
    const auto& data = p.dataset();
    if (!w.fits(data.length())) throw std::out_of_range("window exceeds vector length");
    const auto refs = p.reference_aggregates();
    double total = 0.0;
    for (std::size_t i = 0; i < data.rows(); ++i) {
        const double d =
            aggregate(data.row(i).subspan(w.start(), w.width()), p.aggregation()) - refs[i];
        total += d * d;
    }
    return total;
}

double objective(const SegmentProblem& p, Window w, EvaluationCounter& counter) {
    if (!w.fits(p.length())) throw std::out_of_range("window exceeds vector length");
    counter.charge(1);
    return evaluate(p, w);
}

ScoredWindow brute_force_optimum(const SegmentProblem& p) {
    if (p.length() > brute_force_max_length)
        throw std::invalid_argument("brute force limited to N <= 2000");
    return kernels::brute_force_parallel(p);
}

}  // namespace segopt
