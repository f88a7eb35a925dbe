#include "segopt/optimizer.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_set>

namespace segopt {

std::string_view to_string(DimensionMode m) noexcept {
    return m == DimensionMode::single ? "single" : "multi";
}

std::optional<DimensionMode> parse_dimension_mode(std::string_view s) noexcept {
    if (s == "single") return DimensionMode::single;
    if (s == "multi") return DimensionMode::multi;
    return std::nullopt;
}

void OptimizerConfig::validate() const {
    guiding.validate();
    sampling.validate();
    if (budget < 1) throw std::invalid_argument("budget must be >= 1");
}

namespace {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

std::string guiding_label(const GuidingConfig& g) {
    if (g.mode == GuidingMode::full) return "full";
    return std::string(to_string(g.mode)) + (g.guided ? "-guided" : "-random");
}

std::optional<GuidingConfig> parse_guiding_label(std::string_view label) {
    GuidingConfig g;
    if (label == "full") return g;
    const auto dash = label.find('-');
    if (dash == std::string_view::npos) return std::nullopt;
    const auto mode = parse_guiding_mode(label.substr(0, dash));
    const auto variant = label.substr(dash + 1);
    if (!mode || *mode == GuidingMode::full) return std::nullopt;
    if (variant != "guided" && variant != "random") return std::nullopt;
    g.mode = *mode;
    g.guided = variant == "guided";
    return g;
}

std::string OptimizerConfig::id() const {
    std::string s = std::string(to_string(dimension_mode)) + "_" + guiding_label(guiding);
    if (guiding.mode == GuidingMode::range)
        s += "_s" + format_number(guiding.step_size) + "_w" + std::to_string(guiding.search_width);
    s += "_";
    s += to_string(sampling.mode);
    if (sampling.mode != SamplingMode::exhaustive) s += "_k" + std::to_string(sampling.sample_size);
    return s;
}

DimensionSet select_dimensions(DimensionMode mode, std::uint64_t iteration) noexcept {
    if (mode == DimensionMode::multi) return DimensionSet::both();
    return DimensionSet::only(iteration % 2 == 0 ? Dimension::start : Dimension::end);
}

Window clamp_candidate(std::int64_t start, std::int64_t end, std::size_t length) {
    const IndexRange all{0, static_cast<std::int64_t>(length) - 1};
    start = all.clamp(start);
    end = all.clamp(end);
    if (start > end) std::swap(start, end);
    return {static_cast<std::size_t>(start), static_cast<std::size_t>(end)};
}

Window initial_window(std::size_t length, Rng& rng) {
    const Candidate c = sample_random(region_full_joint(length), 1, rng).front();
    return {static_cast<std::size_t>(c[0]), static_cast<std::size_t>(c[1])};
}

namespace {

class Run {
public:
    Run(const SegmentProblem& p, const OptimizerConfig& cfg, Execution exec)
        : p_(p), cfg_(cfg), exec_(exec), counter_(cfg.budget), rng_(cfg.seed),
          incumbent_(initial_window(p.length(), rng_)) {}

    RunTrace execute() {
        incumbent_value_ = objective(p_, incumbent_, counter_);
        trace_.improvements.push_back({counter_.used(), incumbent_value_, incumbent_});

        std::uint64_t idle = 0;
        while (!counter_.exhausted()) {
            const auto before = counter_.used();
            if (!step(select_dimensions(cfg_.dimension_mode, trace_.iterations))) break;
            ++trace_.iterations;
            idle = counter_.used() == before ? idle + 1 : 0;
            if (idle >= idle_iteration_limit) {
                trace_.stalled = true;
                break;
            }
        }
        trace_.total_evaluations = counter_.used();
        return std::move(trace_);
    }

private:
    bool uses_gradient() const {
        return cfg_.guiding.guided && cfg_.guiding.mode != GuidingMode::full;
    }

    IndexRange guide(Dimension d, const GradientEstimate& g) {
        const IndexRange valid = valid_range(incumbent_, d, p_.length());
        const auto current =
            static_cast<std::int64_t>(d == Dimension::start ? incumbent_.start() : incumbent_.end());
        const auto& gc = cfg_.guiding;
        switch (gc.mode) {
            case GuidingMode::full: return region_full(valid);
            case GuidingMode::direction:
                return gc.guided ? region_direction_guided(current, g.along(d), valid)
                                 : region_direction_random(current, rng_, valid);
            case GuidingMode::range:
                return gc.guided ? region_range_guided(current, g.along(d), gc, valid)
                                 : region_range_random(current, rng_, gc, valid);
        }
        return valid;
    }

    SearchRegion build_region(DimensionSet dims, const GradientEstimate& g) {
        if (dims.size() == 2) {
            if (cfg_.guiding.mode == GuidingMode::full) return region_full_joint(p_.length());
            const IndexRange s = guide(Dimension::start, g);
            const IndexRange e = guide(Dimension::end, g);
            return {{s, e}, false};
        }
        const Dimension d = dims.start ? Dimension::start : Dimension::end;
        return {{guide(d, g)}, false};
    }

    std::vector<Window> to_windows(const std::vector<Candidate>& cands, DimensionSet dims) const {
        std::vector<Window> out;
        out.reserve(cands.size());
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(cands.size() * 2);
        const std::uint64_t n = p_.length();
        for (const auto& c : cands) {
            Window w = incumbent_;
            if (dims.size() == 2)
                w = clamp_candidate(c[0], c[1], p_.length());
            else
                w = with_index(incumbent_, dims.start ? Dimension::start : Dimension::end, c[0]);
            if (w == incumbent_) continue;
            if (seen.insert(w.start() * n + w.end()).second) out.push_back(w);
        }
        return out;
    }

    // One guide/sample/select iteration. Returns false once the budget ran out.
    bool step(DimensionSet dims) {
        GradientEstimate g;
        if (uses_gradient()) {
            const auto before = counter_.used();
            try {
                g = estimate_gradient(p_, incumbent_, dims, counter_);
            } catch (const BudgetExhausted&) {
                trace_.stencil_evaluations += counter_.used() - before;
                return false;
            }
            trace_.stencil_evaluations += static_cast<std::uint64_t>(g.evaluations_spent);
        }

        const SearchRegion region = build_region(dims, g);
        std::vector<Window> batch = to_windows(sample(region, cfg_.sampling, rng_), dims);
        if (batch.size() > counter_.remaining())
            batch.erase(batch.begin() + static_cast<std::ptrdiff_t>(counter_.remaining()), batch.end());
        if (batch.empty()) return true;

        values_.resize(batch.size());
        kernels::evaluate_batch(p_, batch, values_, exec_);
        const auto base = counter_.used();
        counter_.charge(batch.size());
        trace_.candidate_evaluations += batch.size();

        std::size_t best = 0;
        for (std::size_t i = 1; i < batch.size(); ++i)
            if (values_[i] < values_[best]) best = i;
        if (values_[best] < incumbent_value_) {
            incumbent_ = batch[best];
            incumbent_value_ = values_[best];
            trace_.improvements.push_back({base + best + 1, incumbent_value_, incumbent_});
        }
        return true;
    }

    const SegmentProblem& p_;
    const OptimizerConfig& cfg_;
    Execution exec_;
    EvaluationCounter counter_;
    Rng rng_;
    Window incumbent_;
    double incumbent_value_ = 0.0;
    std::vector<double> values_;
    RunTrace trace_;
};

}  // namespace

RunTrace optimize(const SegmentProblem& p, const OptimizerConfig& cfg, Execution exec) {
    cfg.validate();
    return Run(p, cfg, exec).execute();
}

}  // namespace segopt
