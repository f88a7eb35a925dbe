// Serial reference vs OpenMP kernels: candidate batches, brute-force
// enumeration and an experiment fan-out.

#include <map>

#include <benchmark/benchmark.h>

#include "segopt/benchgen.hpp"
#include "segopt/harness.hpp"
#include "segopt/kernels.hpp"
#include "segopt/strategies.hpp"

namespace {

using namespace segopt;

const SegmentProblem& problem(std::size_t length) {
    static std::map<std::size_t, SegmentProblem> cache;
    auto it = cache.find(length);
    if (it == cache.end())
        it = cache.emplace(length, generate_instance(*builtin_spec("x6", 7, 20, length))).first;
    return it->second;
}

std::vector<Window> random_batch(std::size_t length, std::size_t k) {
    Rng rng(11);
    std::vector<Window> out;
    for (const auto& c : sample_random(region_full_joint(length), k, rng))
        out.emplace_back(static_cast<std::size_t>(c[0]), static_cast<std::size_t>(c[1]));
    return out;
}

void BM_BatchSerial(benchmark::State& state) {
    const auto& p = problem(1000);
    const auto batch = random_batch(1000, static_cast<std::size_t>(state.range(0)));
    std::vector<double> out(batch.size());
    for (auto _ : state) {
        kernels::evaluate_batch_serial(p, batch, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BatchParallel(benchmark::State& state) {
    const auto& p = problem(1000);
    const auto batch = random_batch(1000, static_cast<std::size_t>(state.range(0)));
    std::vector<double> out(batch.size());
    for (auto _ : state) {
        kernels::evaluate_batch_parallel(p, batch, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BruteForceSerial(benchmark::State& state) {
    const auto& p = problem(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::brute_force_serial(p));
}

void BM_BruteForceParallel(benchmark::State& state) {
    const auto& p = problem(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::brute_force_parallel(p));
}

void BM_Experiment(benchmark::State& state) {
    ExperimentPlan plan;
    plan.instances = {"x6"};
    plan.length = 200;
    plan.repetitions = 8;
    plan.budget = 5000;
    GridAxes axes;
    axes.dimension_modes = {DimensionMode::multi};
    axes.guiding = {"full"};
    axes.sampling = {SamplingMode::random};
    axes.sample_sizes = {25};
    plan.configs = expand_grid(axes, plan.budget);
    ExperimentOptions opts;
    opts.jobs = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_experiment(plan, opts).runs.size());
}

}  // namespace

BENCHMARK(BM_BatchSerial)->Arg(25)->Arg(100)->Arg(1000);
BENCHMARK(BM_BatchParallel)->Arg(25)->Arg(100)->Arg(1000);
BENCHMARK(BM_BruteForceSerial)->Arg(60)->Arg(200);
BENCHMARK(BM_BruteForceParallel)->Arg(60)->Arg(200);
BENCHMARK(BM_Experiment)->Arg(1)->Arg(0);

BENCHMARK_MAIN();
