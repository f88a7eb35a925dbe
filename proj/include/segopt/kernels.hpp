#pragma once

// Data-parallel evaluation kernels. Each parallel kernel has a serial
// reference with identical results; per-window objectives are always computed
// by the same serial row loop, so both paths are bit-identical.

#include <span>

#include "segopt/core.hpp"

namespace segopt {

enum class Execution { serial, parallel };

namespace kernels {

void evaluate_batch_serial(const SegmentProblem& p, std::span<const Window> windows,
                           std::span<double> out);
void evaluate_batch_parallel(const SegmentProblem& p, std::span<const Window> windows,
                             std::span<double> out);

inline void evaluate_batch(const SegmentProblem& p, std::span<const Window> windows,
                           std::span<double> out, Execution exec) {
    if (exec == Execution::parallel)
        evaluate_batch_parallel(p, windows, out);
    else
        evaluate_batch_serial(p, windows, out);
}

ScoredWindow brute_force_serial(const SegmentProblem& p);
ScoredWindow brute_force_parallel(const SegmentProblem& p);

/// Number of OpenMP threads available (1 without OpenMP).
int max_threads() noexcept;

}  // namespace kernels
}  // namespace segopt
