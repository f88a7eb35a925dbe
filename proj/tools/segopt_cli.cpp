// segopt: command-line front end for instance generation, single runs,
// experiment grids and run-length distributions.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "segopt/benchgen.hpp"
#include "segopt/harness.hpp"
#include "segopt/instance_io.hpp"
#include "segopt/optimizer.hpp"

namespace {

using namespace segopt;

enum Exit : int { ok = 0, usage = 1, io = 2, infeasible = 3 };

std::vector<double> parse_targets(const std::string& list) {
    if (list.empty() || list == "default") return default_targets();
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        const auto next = list.find(',', pos);
        out.push_back(parse_double(list.substr(pos, next == std::string::npos ? next : next - pos)));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

struct GenerateArgs {
    bool suite = false;
    std::string spec;
    std::uint64_t seed = 0;
    std::size_t rows = 20;
    std::size_t length = 1000;
    std::string aggregation = "mean";
    std::string out;
};

struct SolveArgs {
    std::string instance;
    std::string guiding = "full";
    std::string sampling = "random";
    std::string dimension_mode = "multi";
    std::uint64_t budget = 100'000;
    std::uint64_t seed = 0;
    double step_size = 1.0;
    std::int64_t search_width = 0;
    std::size_t sample_size = 10;
    std::string trace;
    bool serial = false;
};

struct ExperimentArgs {
    std::string plan;
    std::string out;
    bool resume = false;
    int jobs = 0;
    std::string group_by = "config";
};

struct RldArgs {
    std::string traces;
    std::string targets = "default";
    std::string out;
    std::string group_by = "config";
};

struct ExportArgs {
    std::string format = "csv";
    std::string traces;
    std::string targets = "default";
    std::string out;
};

int run_generate(const GenerateArgs& a) {
    const auto agg = parse_aggregation(a.aggregation);
    std::vector<InstanceSpec> specs;
    if (a.suite) {
        specs = builtin_suite(a.seed, a.rows, a.length);
    } else {
        auto s = builtin_spec(a.spec, a.seed, a.rows, a.length);
        if (!s) {
            std::cerr << "unknown instance spec '" << a.spec << "' (expected x1..x6)\n";
            return usage;
        }
        specs.push_back(std::move(*s));
    }
    std::error_code ec;
    fs::create_directories(a.out, ec);
    if (ec) {
        std::cerr << "cannot create " << a.out << ": " << ec.message() << '\n';
        return io;
    }
    for (auto& s : specs) {
        s.aggregation = *agg;
        const fs::path path = fs::path(a.out) / (s.name + ".inst");
        save_instance(path, {generate_instance(s), s.seed, s.definition});
        std::cerr << "wrote " << path.string() << '\n';
    }
    return ok;
}

int run_solve(const SolveArgs& a) {
    OptimizerConfig cfg;
    cfg.guiding = *parse_guiding_label(a.guiding);
    cfg.guiding.step_size = a.step_size;
    cfg.guiding.search_width = a.search_width;
    cfg.sampling.mode = *parse_sampling_mode(a.sampling);
    cfg.sampling.sample_size = a.sample_size;
    cfg.dimension_mode = *parse_dimension_mode(a.dimension_mode);
    cfg.budget = a.budget;
    cfg.seed = a.seed;
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << '\n';
        return usage;
    }

    const InstanceFile inst = load_instance(a.instance);
    const auto t0 = std::chrono::steady_clock::now();
    const RunTrace trace =
        optimize(inst.problem, cfg, a.serial ? Execution::serial : Execution::parallel);
    const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - t0;

    const auto& best = trace.final_best();
    std::printf(
        "instance=%s config=%s best_objective=%.17g best_window=[%zu,%zu] evaluations=%llu "
        "stencil_evaluations=%llu improvements=%zu iterations=%llu%s wall_time=%.3fs\n",
        inst.problem.name().c_str(), cfg.id().c_str(), best.best_objective,
        best.best_window.start(), best.best_window.end(),
        static_cast<unsigned long long>(trace.total_evaluations),
        static_cast<unsigned long long>(trace.stencil_evaluations), trace.improvements.size(),
        static_cast<unsigned long long>(trace.iterations), trace.stalled ? " stalled" : "",
        wall.count());

    if (!a.trace.empty()) save_run(a.trace, {inst.problem.name(), cfg, 0, trace});
    return ok;
}

int run_experiment_cmd(const ExperimentArgs& a) {
    ExperimentPlan plan;
    try {
        plan = load_plan(a.plan);
    } catch (const PlanError& e) {
        std::cerr << "plan infeasible: " << e.what() << '\n';
        return infeasible;
    }
    const fs::path out(a.out);
    std::cerr << "experiment: " << plan.instances.size() << " instances x " << plan.configs.size()
              << " configs x " << plan.repetitions << " repetitions, budget " << plan.budget << '\n';
    const ExperimentResult res = run_experiment(plan, {out, a.resume, a.jobs});
    if (res.runs.empty()) {
        std::cerr << "plan infeasible: no runnable cells (" << res.skipped.size() << " skipped, "
                  << res.errors.size() << " errors)\n";
        return infeasible;
    }

    export_results(make_table(res.runs, plan.targets), ExportFormat::csv, out / "results.csv");
    emit_plot_data(rld_by_group(res.runs, plan.targets, *parse_group_by(a.group_by)), out / "rld.csv");
    auto write_cells = [&](const fs::path& path, const std::vector<SkippedCell>& cells) {
        std::ofstream f(path);
        if (!f) throw std::runtime_error("cannot write " + path.string());
        f << "instance,config_id,reason\n";
        for (const auto& c : cells) {
            std::string reason = c.reason;
            std::replace(reason.begin(), reason.end(), ',', ';');
            std::replace(reason.begin(), reason.end(), '\n', ' ');
            f << c.instance << ',' << c.config_id << ',' << reason << '\n';
        }
    };
    write_cells(out / "skipped.csv", res.skipped);
    write_cells(out / "errors.csv", res.errors);
    std::cerr << "experiment: " << res.runs.size() << " runs, " << res.skipped.size()
              << " skipped cells, " << res.errors.size() << " errors -> " << out.string() << '\n';
    return ok;
}

int run_rld(const RldArgs& a) {
    const auto runs = load_runs(a.traces);
    if (runs.empty()) {
        std::cerr << "no run files in " << a.traces << '\n';
        return io;
    }
    const auto curves = rld_by_group(runs, parse_targets(a.targets), *parse_group_by(a.group_by));
    if (a.out.empty() || a.out == "-")
        write_plot_data(std::cout, curves);
    else
        emit_plot_data(curves, a.out);
    return ok;
}

int run_export(const ExportArgs& a) {
    const auto runs = load_runs(a.traces);
    const auto table = make_table(runs, parse_targets(a.targets));
    const auto fmt = a.format == "json" ? ExportFormat::json : ExportFormat::csv;
    if (a.out.empty() || a.out == "-")
        write_table(std::cout, table, fmt);
    else
        export_results(table, fmt, a.out);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Aggregation-window (segment) optimization: instances, strategies, experiments"};
    app.set_version_flag("--version", std::string("segopt ") + SEGOPT_VERSION);
    app.require_subcommand(1);

    const std::vector<std::string> guidings{"full", "direction-random", "direction-guided",
                                            "range-random", "range-guided"};
    const std::vector<std::string> groupings{"config", "instance", "dimension_mode",
                                             "guiding", "sampling", "instance_config"};
    auto targets_check = CLI::Validator(
        [](std::string& s) -> std::string {
            try {
                parse_targets(s);
            } catch (const std::exception& e) {
                return e.what();
            }
            return {};
        },
        "LIST", "target list");

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "Generate built-in benchmark instances");
    auto* g_suite = g->add_flag("--suite", gen.suite, "All built-in instances x1..x6");
    auto* g_spec = g->add_option("--spec", gen.spec, "One built-in instance (x1..x6)");
    g_suite->excludes(g_spec);
    g->add_option("--seed", gen.seed, "Generator seed");
    g->add_option("--rows", gen.rows, "Rows per instance (M)")->check(CLI::PositiveNumber);
    g->add_option("--length", gen.length, "Vector length (N)")->check(CLI::Range(2, 1 << 24));
    g->add_option("--aggregation", gen.aggregation, "Aggregation function")
        ->check(CLI::IsMember({"mean", "sum", "min", "max", "stddev", "median"}));
    g->add_option("--out", gen.out, "Output directory")->required();

    SolveArgs sol;
    auto* s = app.add_subcommand("solve", "Run the optimizer once on an instance file");
    s->add_option("--instance", sol.instance, "Instance file")->required()->check(CLI::ExistingFile);
    s->add_option("--guiding", sol.guiding, "Guiding strategy")->check(CLI::IsMember(guidings));
    s->add_option("--sampling", sol.sampling, "Sampling strategy")
        ->check(CLI::IsMember({"exhaustive", "random", "orthogonal"}));
    s->add_option("--dimension-mode", sol.dimension_mode, "single or multi")
        ->check(CLI::IsMember({"single", "multi"}));
    s->add_option("--budget", sol.budget, "Objective evaluation budget")->check(CLI::PositiveNumber);
    s->add_option("--seed", sol.seed, "Run seed");
    s->add_option("--step-size", sol.step_size, "Range step size")->check(CLI::PositiveNumber);
    s->add_option("--search-width", sol.search_width, "Range search width")->check(CLI::NonNegativeNumber);
    s->add_option("--sample-size", sol.sample_size, "Random/orthogonal sample size")
        ->check(CLI::PositiveNumber);
    s->add_option("--trace", sol.trace, "Write the run trace (JSON) here");
    s->add_flag("--serial", sol.serial, "Evaluate candidate batches serially");

    ExperimentArgs exp;
    auto* e = app.add_subcommand("experiment", "Run an experiment plan");
    e->add_option("--plan", exp.plan, "Plan file")->required()->check(CLI::ExistingFile);
    e->add_option("--out", exp.out, "Output directory")->required();
    e->add_flag("--resume", exp.resume, "Reuse run files already in <out>/traces");
    e->add_option("--jobs", exp.jobs, "Parallel runs (default: all cores)")->check(CLI::NonNegativeNumber);
    e->add_option("--group-by", exp.group_by, "Series grouping for rld.csv")->check(CLI::IsMember(groupings));

    RldArgs rld;
    auto* r = app.add_subcommand("rld", "Run-length distributions from run files");
    r->add_option("--traces", rld.traces, "Directory of run files")->required()->check(CLI::ExistingDirectory);
    r->add_option("--targets", rld.targets, "Comma-separated objective targets or 'default'")
        ->check(targets_check);
    r->add_option("--out", rld.out, "Output CSV (default stdout)");
    r->add_option("--group-by", rld.group_by, "Series grouping")->check(CLI::IsMember(groupings));

    ExportArgs ex;
    auto* x = app.add_subcommand("export", "Export the result table of run files");
    x->add_option("--format", ex.format, "csv or json")->required()->check(CLI::IsMember({"csv", "json"}));
    x->add_option("--traces", ex.traces, "Directory of run files")->required()->check(CLI::ExistingDirectory);
    x->add_option("--targets", ex.targets, "Comma-separated objective targets or 'default'")
        ->check(targets_check);
    x->add_option("--out", ex.out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
        if (g->parsed() && !gen.suite && gen.spec.empty())
            throw CLI::ValidationError("generate", "one of --suite or --spec is required");
    } catch (const CLI::CallForHelp& err) {
        return app.exit(err);
    } catch (const CLI::CallForAllHelp& err) {
        return app.exit(err);
    } catch (const CLI::CallForVersion& err) {
        return app.exit(err);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return usage;
    }

    try {
        if (g->parsed()) return run_generate(gen);
        if (s->parsed()) return run_solve(sol);
        if (e->parsed()) return run_experiment_cmd(exp);
        if (r->parsed()) return run_rld(rld);
        if (x->parsed()) return run_export(ex);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return io;
    }
    return usage;
}
