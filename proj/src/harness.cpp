#include "segopt/harness.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "segopt/rng.hpp"

namespace segopt {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const auto next = s.find(sep, pos);
        out.emplace_back(trim(s.substr(pos, next == std::string_view::npos ? next : next - pos)));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

// Shortest representation that round-trips.
std::string shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

bool run_order(const RunRecord& a, const RunRecord& b) {
    if (a.instance != b.instance) return a.instance < b.instance;
    const auto ia = a.config.id();
    const auto ib = b.config.id();
    if (ia != ib) return ia < ib;
    return a.repetition < b.repetition;
}

}  // namespace

std::vector<double> default_targets() {
    return {1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 0.0};
}

std::vector<OptimizerConfig> expand_grid(const GridAxes& axes, std::uint64_t budget) {
    std::vector<OptimizerConfig> out;
    std::set<std::string> seen;
    auto add = [&](const OptimizerConfig& c) {
        if (seen.insert(c.id()).second) out.push_back(c);
    };
    for (auto dm : axes.dimension_modes) {
        for (const auto& label : axes.guiding) {
            const auto g = parse_guiding_label(label);
            if (!g) throw PlanError("unknown guiding '" + label + "'");
            std::vector<GuidingConfig> guides;
            if (g->mode == GuidingMode::range) {
                for (double s : axes.step_sizes)
                    for (auto w : axes.search_widths) {
                        GuidingConfig r = *g;
                        r.step_size = s;
                        r.search_width = w;
                        guides.push_back(r);
                    }
            } else {
                guides.push_back(*g);
            }
            for (const auto& gc : guides) {
                for (auto sm : axes.sampling) {
                    OptimizerConfig c;
                    c.guiding = gc;
                    c.dimension_mode = dm;
                    c.budget = budget;
                    c.sampling.mode = sm;
                    if (sm == SamplingMode::exhaustive) {
                        add(c);
                        continue;
                    }
                    for (auto k : axes.sample_sizes) {
                        c.sampling.sample_size = k;
                        add(c);
                    }
                }
            }
        }
    }
    return out;
}

void ExperimentPlan::validate() const {
    if (instances.empty()) throw PlanError("plan lists no instances");
    if (configs.empty()) throw PlanError("plan grid is empty");
    if (repetitions < 1) throw PlanError("repetitions must be >= 1");
    if (budget < 1) throw PlanError("budget must be >= 1");
    if (rows < 1 || length < 2) throw PlanError("rows must be >= 1 and length >= 2");
    if (!std::is_sorted(targets.begin(), targets.end(), std::greater<>()))
        throw PlanError("targets must be sorted descending");
    for (const auto& c : configs) {
        try {
            c.validate();
        } catch (const std::invalid_argument& e) {
            throw PlanError(c.id() + ": " + e.what());
        }
    }
}

ExperimentPlan parse_plan(std::istream& in) {
    ExperimentPlan plan;
    GridAxes axes;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw PlanError("plan line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto t = trim(line);
        if (const auto hash = t.find('#'); hash != std::string_view::npos) t = trim(t.substr(0, hash));
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string_view::npos) fail("expected 'key = value'");
        const std::string key(trim(t.substr(0, eq)));
        const auto values = split(trim(t.substr(eq + 1)), ',');
        if (values.empty() || values.front().empty()) fail("no value for '" + key + "'");
        auto one = [&]() -> const std::string& {
            if (values.size() != 1) fail("'" + key + "' takes one value");
            return values.front();
        };
        try {
            if (key == "instances") {
                plan.instances = values;
            } else if (key == "repetitions") {
                plan.repetitions = parse_uint(one());
            } else if (key == "budget") {
                plan.budget = parse_uint(one());
            } else if (key == "base_seed") {
                plan.base_seed = parse_uint(one());
            } else if (key == "instance_seed") {
                plan.instance_seed = parse_uint(one());
            } else if (key == "rows") {
                plan.rows = parse_uint(one());
            } else if (key == "length") {
                plan.length = parse_uint(one());
            } else if (key == "targets") {
                plan.targets.clear();
                for (const auto& v : values) plan.targets.push_back(parse_double(v));
            } else if (key == "dimension_mode") {
                axes.dimension_modes.clear();
                for (const auto& v : values) {
                    const auto m = parse_dimension_mode(v);
                    if (!m) fail("unknown dimension_mode '" + v + "'");
                    axes.dimension_modes.push_back(*m);
                }
            } else if (key == "guiding") {
                axes.guiding = values;
            } else if (key == "step_size") {
                axes.step_sizes.clear();
                for (const auto& v : values) axes.step_sizes.push_back(parse_double(v));
            } else if (key == "search_width") {
                axes.search_widths.clear();
                for (const auto& v : values)
                    axes.search_widths.push_back(static_cast<std::int64_t>(parse_uint(v)));
            } else if (key == "sampling") {
                axes.sampling.clear();
                for (const auto& v : values) {
                    const auto m = parse_sampling_mode(v);
                    if (!m) fail("unknown sampling '" + v + "'");
                    axes.sampling.push_back(*m);
                }
            } else if (key == "sample_size") {
                axes.sample_sizes.clear();
                for (const auto& v : values) axes.sample_sizes.push_back(parse_uint(v));
            } else {
                fail("unknown key '" + key + "'");
            }
        } catch (const FormatError& e) {
            fail(e.what());
        }
    }
    plan.configs = expand_grid(axes, plan.budget);
    plan.validate();
    return plan;
}

ExperimentPlan load_plan(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read plan " + path.string());
    return parse_plan(in);
}

std::uint64_t cell_seed(std::uint64_t base_seed, std::string_view instance,
                        std::string_view config_id, std::size_t repetition) {
    std::uint64_t h = fnv1a(std::to_string(base_seed));
    h = fnv1a("|", h);
    h = fnv1a(instance, h);
    h = fnv1a("|", h);
    h = fnv1a(config_id, h);
    h = fnv1a("|", h);
    h = fnv1a(std::to_string(repetition), h);
    return mix64(h);
}

std::uint64_t worst_case_batch(const OptimizerConfig& cfg, std::size_t length) {
    const std::uint64_t n = length;
    const bool multi = cfg.dimension_mode == DimensionMode::multi;
    std::uint64_t per_dim = n;
    if (cfg.guiding.mode == GuidingMode::range)
        per_dim = std::min<std::uint64_t>(n, 2 * static_cast<std::uint64_t>(cfg.guiding.search_width) + 1);
    else if (cfg.guiding.mode == GuidingMode::direction)
        per_dim = n - 1;

    std::uint64_t region = multi ? per_dim * per_dim : per_dim;
    if (multi && cfg.guiding.mode == GuidingMode::full) region = n * (n + 1) / 2;

    switch (cfg.sampling.mode) {
        case SamplingMode::exhaustive: return region;
        case SamplingMode::random: return std::min<std::uint64_t>(region, cfg.sampling.sample_size);
        case SamplingMode::orthogonal: {
            const std::uint64_t k = std::min<std::uint64_t>(per_dim, cfg.sampling.sample_size);
            return multi ? k * k : k;
        }
    }
    return region;
}

bool cell_feasible(const OptimizerConfig& cfg, std::size_t length) {
    if (cfg.sampling.mode != SamplingMode::exhaustive) return true;
    const auto worst = worst_case_batch(cfg, length);
    return worst <= cfg.budget && worst <= exhaustive_guard;
}

InstanceFile resolve_instance(const ExperimentPlan& plan, const std::string& ref) {
    if (const auto spec = builtin_spec(ref, plan.instance_seed, plan.rows, plan.length))
        return {generate_instance(*spec), spec->seed, spec->definition};
    return load_instance(ref);
}

// --- traces ------------------------------------------------------------------

std::string trace_file_key(const RunRecord& r) {
    return r.instance + "__" + r.config.id() + "__r" + std::to_string(r.repetition);
}

namespace {

json to_json(const RunRecord& r) {
    const auto& c = r.config;
    json imp = json::array();
    for (const auto& i : r.trace.improvements)
        imp.push_back({i.evaluations_used, i.best_window.start(), i.best_window.end(), i.best_objective});
    return {
        {"instance", r.instance},
        {"config_id", c.id()},
        {"dimension_mode", std::string(to_string(c.dimension_mode))},
        {"guiding", guiding_label(c.guiding)},
        {"step_size", c.guiding.step_size},
        {"search_width", c.guiding.search_width},
        {"sampling", std::string(to_string(c.sampling.mode))},
        {"sample_size", c.sampling.sample_size},
        {"budget", c.budget},
        {"seed", c.seed},
        {"repetition", r.repetition},
        {"total_evaluations", r.trace.total_evaluations},
        {"stencil_evaluations", r.trace.stencil_evaluations},
        {"candidate_evaluations", r.trace.candidate_evaluations},
        {"iterations", r.trace.iterations},
        {"stalled", r.trace.stalled},
        {"improvements", imp},
    };
}

RunRecord from_json(const json& j) {
    RunRecord r;
    r.instance = j.at("instance").get<std::string>();
    auto& c = r.config;
    const auto dm = parse_dimension_mode(j.at("dimension_mode").get<std::string>());
    const auto g = parse_guiding_label(j.at("guiding").get<std::string>());
    const auto sm = parse_sampling_mode(j.at("sampling").get<std::string>());
    if (!dm || !g || !sm) throw FormatError("run file has unknown strategy names");
    c.dimension_mode = *dm;
    c.guiding = *g;
    c.guiding.step_size = j.at("step_size").get<double>();
    c.guiding.search_width = j.at("search_width").get<std::int64_t>();
    c.sampling.mode = *sm;
    c.sampling.sample_size = j.at("sample_size").get<std::size_t>();
    c.budget = j.at("budget").get<std::uint64_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    r.repetition = j.at("repetition").get<std::size_t>();
    auto& t = r.trace;
    t.total_evaluations = j.at("total_evaluations").get<std::uint64_t>();
    t.stencil_evaluations = j.at("stencil_evaluations").get<std::uint64_t>();
    t.candidate_evaluations = j.at("candidate_evaluations").get<std::uint64_t>();
    t.iterations = j.at("iterations").get<std::uint64_t>();
    t.stalled = j.at("stalled").get<bool>();
    for (const auto& i : j.at("improvements"))
        t.improvements.push_back({i.at(0).get<std::uint64_t>(), i.at(3).get<double>(),
                                  Window(i.at(1).get<std::size_t>(), i.at(2).get<std::size_t>())});
    if (t.improvements.empty()) throw FormatError("run file has no improvements");
    if (j.at("config_id").get<std::string>() != c.id())
        throw FormatError("run file config_id does not match its fields");
    return r;
}

}  // namespace

void save_run(const fs::path& path, const RunRecord& r) {
    // Write-then-rename so an interrupted experiment never leaves a torn file.
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << to_json(r).dump() << '\n';
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

RunRecord load_run(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    try {
        return from_json(json::parse(in));
    } catch (const json::exception& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

std::vector<RunRecord> load_runs(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: " + dir.string());
    std::vector<RunRecord> runs;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            runs.push_back(load_run(entry.path()));
    std::sort(runs.begin(), runs.end(), run_order);
    return runs;
}

// --- experiment --------------------------------------------------------------

ExperimentResult run_experiment(const ExperimentPlan& plan, const ExperimentOptions& opts) {
    plan.validate();
    ExperimentResult result;

    std::vector<std::optional<InstanceFile>> instances;
    for (const auto& ref : plan.instances) {
        try {
            instances.emplace_back(resolve_instance(plan, ref));
        } catch (const std::exception& e) {
            instances.emplace_back(std::nullopt);
            for (const auto& c : plan.configs) result.errors.push_back({ref, c.id(), e.what()});
        }
    }

    struct Cell {
        std::size_t instance;
        std::size_t config;
        std::size_t repetition;
    };
    std::vector<Cell> cells;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        if (!instances[i]) continue;
        const auto& p = instances[i]->problem;
        for (std::size_t c = 0; c < plan.configs.size(); ++c) {
            if (!cell_feasible(plan.configs[c], p.length())) {
                result.skipped.push_back(
                    {p.name(), plan.configs[c].id(),
                     "exhaustive batch of " +
                         std::to_string(worst_case_batch(plan.configs[c], p.length())) +
                         " candidates exceeds budget"});
                continue;
            }
            for (std::size_t r = 0; r < plan.repetitions; ++r) cells.push_back({i, c, r});
        }
    }

    fs::path trace_dir;
    if (opts.out_dir) {
        trace_dir = *opts.out_dir / "traces";
        std::error_code ec;
        fs::create_directories(trace_dir, ec);
        if (ec) throw std::runtime_error("cannot create " + trace_dir.string() + ": " + ec.message());
    }

    std::vector<RunRecord> runs(cells.size());
    std::vector<std::string> failures(cells.size());
    const auto count = static_cast<std::ptrdiff_t>(cells.size());
    const int threads = opts.jobs > 0 ? opts.jobs : kernels::max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        const Cell& cell = cells[static_cast<std::size_t>(k)];
        const auto& p = instances[cell.instance]->problem;
        RunRecord& rec = runs[static_cast<std::size_t>(k)];
        rec.instance = p.name();
        rec.config = plan.configs[cell.config];
        rec.config.budget = plan.budget;
        rec.config.seed = cell_seed(plan.base_seed, p.name(), rec.config.id(), cell.repetition);
        rec.repetition = cell.repetition;
        try {
            const fs::path file = opts.out_dir ? trace_dir / (trace_file_key(rec) + ".json") : fs::path();
            if (opts.resume && opts.out_dir && fs::exists(file)) {
                rec = load_run(file);
            } else {
                rec.trace = optimize(p, rec.config);
                if (opts.out_dir) {
                    std::string err;
#pragma omp critical(segopt_persist)
                    {
                        try {
                            save_run(file, rec);
                        } catch (const std::exception& e) {
                            err = e.what();
                        }
                    }
                    if (!err.empty()) throw std::runtime_error(err);
                }
            }
        } catch (const std::exception& e) {
            failures[static_cast<std::size_t>(k)] = e.what();
        }
    }

    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (failures[k].empty()) {
            result.runs.push_back(std::move(runs[k]));
        } else {
            result.errors.push_back({runs[k].instance, runs[k].config.id(), failures[k]});
        }
    }
    std::sort(result.runs.begin(), result.runs.end(), run_order);
    return result;
}

// --- run-length distributions ------------------------------------------------

double RLDCurve::at(std::uint64_t evaluations) const {
    double v = 0.0;
    for (const auto& p : points) {
        if (p.evaluations > evaluations) break;
        v = p.proportion;
    }
    return v;
}

std::optional<std::uint64_t> solve_point(const RunTrace& t, double target) {
    for (const auto& i : t.improvements)
        if (i.best_objective <= target) return i.evaluations_used;
    return std::nullopt;
}

RLDCurve compute_rld(const std::vector<const RunTrace*>& traces, const std::vector<double>& targets) {
    if (traces.empty()) throw std::invalid_argument("run-length distribution needs traces");
    if (targets.empty()) throw std::invalid_argument("run-length distribution needs targets");
    if (!std::is_sorted(targets.begin(), targets.end(), std::greater<>()))
        throw std::invalid_argument("targets must be sorted descending");

    std::vector<std::uint64_t> solved;
    std::uint64_t longest = 0;
    for (const auto* t : traces) {
        longest = std::max(longest, t->total_evaluations);
        for (double target : targets)
            if (const auto e = solve_point(*t, target)) solved.push_back(*e);
    }
    std::sort(solved.begin(), solved.end());
    const double pairs = static_cast<double>(traces.size() * targets.size());

    RLDCurve curve;
    curve.targets = targets;
    curve.points.push_back({0, 0.0});
    for (std::size_t i = 0; i < solved.size(); ++i) {
        if (i + 1 < solved.size() && solved[i + 1] == solved[i]) continue;
        const double prop = static_cast<double>(i + 1) / pairs;
        if (curve.points.back().evaluations == solved[i])
            curve.points.back().proportion = prop;
        else
            curve.points.push_back({solved[i], prop});
    }
    if (longest > curve.points.back().evaluations)
        curve.points.push_back({longest, curve.points.back().proportion});
    return curve;
}

RLDCurve compute_rld(const std::vector<RunTrace>& traces, const std::vector<double>& targets) {
    std::vector<const RunTrace*> ptrs;
    ptrs.reserve(traces.size());
    for (const auto& t : traces) ptrs.push_back(&t);
    return compute_rld(ptrs, targets);
}

std::optional<GroupBy> parse_group_by(std::string_view s) noexcept {
    if (s == "config") return GroupBy::config;
    if (s == "instance") return GroupBy::instance;
    if (s == "dimension_mode") return GroupBy::dimension_mode;
    if (s == "guiding") return GroupBy::guiding;
    if (s == "sampling") return GroupBy::sampling;
    if (s == "instance_config") return GroupBy::instance_config;
    return std::nullopt;
}

std::string group_key(const RunRecord& r, GroupBy g) {
    switch (g) {
        case GroupBy::config: return r.config.id();
        case GroupBy::instance: return r.instance;
        case GroupBy::dimension_mode: return std::string(to_string(r.config.dimension_mode));
        case GroupBy::guiding: return guiding_label(r.config.guiding);
        case GroupBy::sampling: return std::string(to_string(r.config.sampling.mode));
        case GroupBy::instance_config: return r.instance + "/" + r.config.id();
    }
    return {};
}

std::map<std::string, RLDCurve> rld_by_group(const std::vector<RunRecord>& runs,
                                             const std::vector<double>& targets, GroupBy g) {
    std::map<std::string, std::vector<const RunTrace*>> groups;
    for (const auto& r : runs) groups[group_key(r, g)].push_back(&r.trace);
    std::map<std::string, RLDCurve> out;
    for (const auto& [key, traces] : groups) out.emplace(key, compute_rld(traces, targets));
    return out;
}

void write_plot_data(std::ostream& out, const std::map<std::string, RLDCurve>& curves) {
    out << "series,evaluations,proportion\n";
    for (const auto& [name, curve] : curves)
        for (const auto& p : curve.points)
            out << name << ',' << p.evaluations << ',' << shortest(p.proportion) << '\n';
}

void emit_plot_data(const std::map<std::string, RLDCurve>& curves, const fs::path& path) {
    if (curves.empty()) throw std::invalid_argument("no curves to emit");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_plot_data(out, curves);
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

// --- result table ------------------------------------------------------------

ResultTable make_table(const std::vector<RunRecord>& runs, const std::vector<double>& targets) {
    ResultTable t;
    t.targets = targets;
    for (const auto& r : runs) {
        ResultRow row;
        row.instance = r.instance;
        row.config_id = r.config.id();
        row.guiding = guiding_label(r.config.guiding);
        row.guided = r.config.guiding.guided;
        row.step_size = r.config.guiding.step_size;
        row.search_width = r.config.guiding.search_width;
        row.sampling = std::string(to_string(r.config.sampling.mode));
        row.sample_size = r.config.sampling.sample_size;
        row.dimension_mode = std::string(to_string(r.config.dimension_mode));
        row.repetition = r.repetition;
        row.seed = r.config.seed;
        row.total_evaluations = r.trace.total_evaluations;
        row.best_objective = r.trace.final_best().best_objective;
        for (double target : targets) row.solve_evals.push_back(solve_point(r.trace, target));
        t.rows.push_back(std::move(row));
    }
    return t;
}

namespace {

constexpr std::string_view csv_prefix = "solve_evals_";
constexpr std::size_t fixed_columns = 13;

void write_csv(std::ostream& out, const ResultTable& t) {
    out << "instance,config_id,guiding,guided,step_size,search_width,sampling,sample_size,"
           "dimension_mode,repetition,seed,total_evaluations,best_objective";
    for (double target : t.targets) out << ',' << csv_prefix << shortest(target);
    out << '\n';
    for (const auto& r : t.rows) {
        out << r.instance << ',' << r.config_id << ',' << r.guiding << ','
            << (r.guided ? "true" : "false") << ',' << shortest(r.step_size) << ','
            << r.search_width << ',' << r.sampling << ',' << r.sample_size << ','
            << r.dimension_mode << ',' << r.repetition << ',' << r.seed << ','
            << r.total_evaluations << ',' << shortest(r.best_objective);
        for (const auto& s : r.solve_evals) {
            out << ',';
            if (s) out << *s;
        }
        out << '\n';
    }
}

ResultTable read_csv(std::istream& in) {
    ResultTable t;
    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty results file");
    const auto header = split(line, ',');
    if (header.size() < fixed_columns || header[0] != "instance")
        throw FormatError("unexpected results header");
    for (std::size_t c = fixed_columns; c < header.size(); ++c) {
        if (!header[c].starts_with(csv_prefix)) throw FormatError("unexpected column " + header[c]);
        t.targets.push_back(parse_double(std::string_view(header[c]).substr(csv_prefix.size())));
    }
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != header.size()) throw FormatError("ragged results row");
        ResultRow r;
        r.instance = f[0];
        r.config_id = f[1];
        r.guiding = f[2];
        r.guided = f[3] == "true";
        r.step_size = parse_double(f[4]);
        r.search_width = std::stoll(f[5]);
        r.sampling = f[6];
        r.sample_size = parse_uint(f[7]);
        r.dimension_mode = f[8];
        r.repetition = parse_uint(f[9]);
        r.seed = parse_uint(f[10]);
        r.total_evaluations = parse_uint(f[11]);
        r.best_objective = parse_double(f[12]);
        for (std::size_t c = fixed_columns; c < f.size(); ++c)
            r.solve_evals.push_back(f[c].empty() ? std::nullopt
                                                 : std::optional<std::uint64_t>(parse_uint(f[c])));
        t.rows.push_back(std::move(r));
    }
    return t;
}

json table_json(const ResultTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        json solves = json::array();
        for (const auto& s : r.solve_evals) solves.push_back(s ? json(*s) : json(nullptr));
        rows.push_back({{"instance", r.instance},
                        {"config_id", r.config_id},
                        {"guiding", r.guiding},
                        {"guided", r.guided},
                        {"step_size", r.step_size},
                        {"search_width", r.search_width},
                        {"sampling", r.sampling},
                        {"sample_size", r.sample_size},
                        {"dimension_mode", r.dimension_mode},
                        {"repetition", r.repetition},
                        {"seed", r.seed},
                        {"total_evaluations", r.total_evaluations},
                        {"best_objective", r.best_objective},
                        {"solve_evals", solves}});
    }
    return {{"targets", t.targets}, {"rows", rows}};
}

ResultTable table_from_json(const json& j) {
    ResultTable t;
    t.targets = j.at("targets").get<std::vector<double>>();
    for (const auto& jr : j.at("rows")) {
        ResultRow r;
        r.instance = jr.at("instance").get<std::string>();
        r.config_id = jr.at("config_id").get<std::string>();
        r.guiding = jr.at("guiding").get<std::string>();
        r.guided = jr.at("guided").get<bool>();
        r.step_size = jr.at("step_size").get<double>();
        r.search_width = jr.at("search_width").get<std::int64_t>();
        r.sampling = jr.at("sampling").get<std::string>();
        r.sample_size = jr.at("sample_size").get<std::size_t>();
        r.dimension_mode = jr.at("dimension_mode").get<std::string>();
        r.repetition = jr.at("repetition").get<std::size_t>();
        r.seed = jr.at("seed").get<std::uint64_t>();
        r.total_evaluations = jr.at("total_evaluations").get<std::uint64_t>();
        r.best_objective = jr.at("best_objective").get<double>();
        for (const auto& s : jr.at("solve_evals"))
            r.solve_evals.push_back(s.is_null() ? std::nullopt
                                                : std::optional<std::uint64_t>(s.get<std::uint64_t>()));
        t.rows.push_back(std::move(r));
    }
    return t;
}

}  // namespace

void write_table(std::ostream& out, const ResultTable& t, ExportFormat f) {
    if (f == ExportFormat::csv)
        write_csv(out, t);
    else
        out << table_json(t).dump(2) << '\n';
}

ResultTable read_table(std::istream& in, ExportFormat f) {
    if (f == ExportFormat::csv) return read_csv(in);
    try {
        return table_from_json(json::parse(in));
    } catch (const json::exception& e) {
        throw FormatError(e.what());
    }
}

void export_results(const ResultTable& t, ExportFormat f, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_table(out, t, f);
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

ResultTable import_results(const fs::path& path, ExportFormat f) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    return read_table(in, f);
}

}  // namespace segopt
