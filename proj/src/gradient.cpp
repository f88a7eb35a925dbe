#include "segopt/gradient.hpp"

#include <array>
#include <stdexcept>

namespace segopt {

IndexRange valid_range(Window w, Dimension d, std::size_t length) noexcept {
    if (d == Dimension::start) return {0, static_cast<std::int64_t>(w.end())};
    return {static_cast<std::int64_t>(w.start()), static_cast<std::int64_t>(length) - 1};
}

Window with_index(Window w, Dimension d, std::int64_t k) {
    if (k < 0) throw std::out_of_range("negative window index");
    const auto idx = static_cast<std::size_t>(k);
    return d == Dimension::start ? Window(idx, w.end()) : Window(w.start(), idx);
}

StencilResult five_point_stencil(const std::function<double(std::int64_t)>& g, std::int64_t x,
                                 IndexRange range) {
    constexpr std::array<int, 4> offsets{-2, -1, 1, 2};
    constexpr std::array<double, 4> weights{1.0, -8.0, 8.0, -1.0};

    std::array<std::int64_t, 4> points{};
    std::array<double, 4> values{};
    int calls = 0;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        points[i] = range.clamp(x + offsets[i]);
        bool cached = false;
        for (std::size_t j = 0; j < i; ++j) {
            if (points[j] == points[i]) {
                values[i] = values[j];
                cached = true;
                break;
            }
        }
        if (!cached) {
            values[i] = g(points[i]);
            ++calls;
        }
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < 4; ++i) acc += weights[i] * values[i];
    return {acc / 12.0, calls};
}

double stencil_derivative(const SegmentProblem& p, Window w, Dimension d,
                          EvaluationCounter& counter) {
    if (!w.fits(p.length())) throw std::out_of_range("window exceeds vector length");
    const IndexRange range = valid_range(w, d, p.length());
    const auto x = static_cast<std::int64_t>(d == Dimension::start ? w.start() : w.end());
    return five_point_stencil(
               [&](std::int64_t k) { return objective(p, with_index(w, d, k), counter); }, x,
               range)
        .derivative;
}

GradientEstimate estimate_gradient(const SegmentProblem& p, Window w, DimensionSet dims,
                                   EvaluationCounter& counter) {
    if (dims.empty()) throw std::invalid_argument("gradient needs at least one dimension");
    GradientEstimate g;
    const auto before = counter.used();
    if (dims.start) g.d_start = stencil_derivative(p, w, Dimension::start, counter);
    if (dims.end) g.d_end = stencil_derivative(p, w, Dimension::end, counter);
    g.evaluations_spent = static_cast<int>(counter.used() - before);
    return g;
}

}  // namespace segopt
