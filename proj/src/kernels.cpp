#include "segopt/kernels.hpp"

#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace segopt::kernels {

namespace {

void check_sizes(std::span<const Window> windows, std::span<double> out) {
    if (out.size() < windows.size())
        throw std::invalid_argument("output span shorter than window batch");
}

// Best window with the given start; ties keep the smaller end.
ScoredWindow best_for_start(const SegmentProblem& p, std::size_t start) {
    ScoredWindow best{Window(start, start), evaluate(p, Window(start, start))};
    for (std::size_t end = start + 1; end < p.length(); ++end) {
        const double v = evaluate(p, Window(start, end));
        if (v < best.value) best = {Window(start, end), v};
    }
    return best;
}

}  // namespace

void evaluate_batch_serial(const SegmentProblem& p, std::span<const Window> windows,
                           std::span<double> out) {
    check_sizes(windows, out);
    for (std::size_t i = 0; i < windows.size(); ++i) out[i] = evaluate(p, windows[i]);
}

void evaluate_batch_parallel(const SegmentProblem& p, std::span<const Window> windows,
                             std::span<double> out) {
    check_sizes(windows, out);
    const auto n = static_cast<std::ptrdiff_t>(windows.size());
#pragma omp parallel for schedule(dynamic, 8) if (n > 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = evaluate(p, windows[i]);
}

ScoredWindow brute_force_serial(const SegmentProblem& p) {
    ScoredWindow best = best_for_start(p, 0);
    for (std::size_t start = 1; start < p.length(); ++start) {
        const ScoredWindow cand = best_for_start(p, start);
        if (cand.value < best.value) best = cand;
    }
    return best;
}

ScoredWindow brute_force_parallel(const SegmentProblem& p) {
    const auto n = static_cast<std::ptrdiff_t>(p.length());
    std::vector<ScoredWindow> per_start(p.length(), ScoredWindow{Window(0, 0), 0.0});
    // Row starts have decreasing cost, hence the dynamic schedule.
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t s = 0; s < n; ++s)
        per_start[static_cast<std::size_t>(s)] = best_for_start(p, static_cast<std::size_t>(s));

    ScoredWindow best = per_start.front();
    for (std::size_t s = 1; s < per_start.size(); ++s)
        if (per_start[s].value < best.value) best = per_start[s];
    return best;
}

int max_threads() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace segopt::kernels
