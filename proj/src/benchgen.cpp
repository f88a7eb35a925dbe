#include "segopt/benchgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "segopt/rng.hpp"

namespace segopt {

namespace {

// Counter streams. Keys are (seed, row, index, stream).
constexpr std::uint64_t mean_stream = 1;
constexpr std::uint64_t sd_stream = 2;
constexpr std::uint64_t noise_u1 = 3;
constexpr std::uint64_t noise_u2 = 4;
constexpr std::uint64_t reference_stream = 5;

double uniform_in(UniformRange r, double u) { return r.lo + (r.hi - r.lo) * u; }

std::uint64_t piece_start(std::size_t j, std::size_t pieces, std::size_t length) {
    return static_cast<std::uint64_t>(j) * length / pieces;
}

}  // namespace

void ControlExpression::validate() const {
    if (pieces < 1) throw std::invalid_argument("control expression needs >= 1 piece");
    if (!(divisor > 0.0)) throw std::invalid_argument("control divisor must be > 0");
    if (base.lo > base.hi || scale.lo > scale.hi)
        throw std::invalid_argument("uniform range with lo > hi");
}

double ControlDraw::at(std::size_t t, std::size_t length) const {
    double v = base;
    const std::size_t pieces = slopes.size();
    for (std::size_t j = 0; j < pieces; ++j) {
        const auto lo = piece_start(j, pieces, length);
        const auto hi = piece_start(j + 1, pieces, length);
        if (t <= lo) break;
        const auto run = std::min<std::uint64_t>(t, hi) - lo;
        v += slopes[j] * static_cast<double>(run);
    }
    return v;
}

void InstanceSpec::validate() const {
    if (name.empty()) throw std::invalid_argument("instance spec needs a name");
    if (rows < 1 || length < 2) throw std::invalid_argument("instance needs M >= 1 and N >= 2");
    mean_control.validate();
    sd_control.validate();
    if (!sd_control.non_negative())
        throw std::invalid_argument("sd control ranges must be non-negative");
    if (!(min_width_fraction >= 0.0 && min_width_fraction <= 1.0))
        throw std::invalid_argument("min_width_fraction must lie in [0, 1]");
}

std::size_t InstanceSpec::min_width() const {
    const auto w = static_cast<std::size_t>(std::ceil(min_width_fraction * static_cast<double>(length)));
    return std::clamp<std::size_t>(w, 1, length);
}

ControlDraw draw_control(const ControlExpression& c, std::uint64_t seed, std::size_t row,
                         std::uint64_t stream) {
    ControlDraw d;
    d.base = uniform_in(c.base, counter_uniform(seed, row, 0, stream * 16));
    d.slopes.reserve(c.pieces);
    for (std::size_t j = 0; j < c.pieces; ++j)
        d.slopes.push_back(uniform_in(c.scale, counter_uniform(seed, row, j, stream * 16 + 1)) /
                           c.divisor);
    return d;
}

Window draw_reference_window(std::size_t length, std::size_t min_width, std::uint64_t seed) {
    if (min_width < 1 || min_width > length) throw std::invalid_argument("invalid min_width");
    // Start a admits ends a+w-1 .. N-1, i.e. N - a - w + 1 windows.
    const std::uint64_t span = length - min_width + 1;
    const std::uint64_t total = span * (span + 1) / 2;
    auto rank = static_cast<std::uint64_t>(
        counter_uniform(seed, 0, 0, reference_stream) * static_cast<double>(total));
    rank = std::min(rank, total - 1);
    for (std::size_t a = 0; a < span; ++a) {
        const std::uint64_t count = span - a;
        if (rank < count) return {a, a + min_width - 1 + static_cast<std::size_t>(rank)};
        rank -= count;
    }
    throw std::logic_error("reference rank out of range");
}

SegmentProblem generate_instance(const InstanceSpec& spec) {
    spec.validate();
    const std::size_t m = spec.rows;
    const std::size_t n = spec.length;
    std::vector<double> values;
    values.reserve(m * n);
    for (std::size_t i = 0; i < m; ++i) {
        const ControlDraw mean = draw_control(spec.mean_control, spec.seed, i, mean_stream);
        const ControlDraw sd = draw_control(spec.sd_control, spec.seed, i, sd_stream);
        for (std::size_t t = 0; t < n; ++t) {
            const double u1 = 1.0 - counter_uniform(spec.seed, i, t, noise_u1);
            const double u2 = counter_uniform(spec.seed, i, t, noise_u2);
            const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
            values.push_back(mean.at(t, n) + sd.at(t, n) * z);
        }
    }
    return SegmentProblem(spec.name, VectorDataset(m, n, std::move(values)), spec.aggregation,
                          draw_reference_window(n, spec.min_width(), spec.seed));
}

std::vector<InstanceSpec> builtin_suite(std::uint64_t seed, std::size_t rows, std::size_t length) {
    auto make = [&](std::string name, ControlExpression mean, ControlExpression sd) {
        InstanceSpec s;
        s.name = std::move(name);
        s.mean_control = mean;
        s.sd_control = sd;
        s.rows = rows;
        s.length = length;
        // Distinct streams per instance under a shared suite seed.
        s.seed = mix64(fnv1a(s.name, seed));
        return s;
    };

    std::vector<InstanceSpec> suite;
    // x1: constant mean, constant noise.
    suite.push_back(make("x1", {{2, 5}, {0, 0}, 1, 1}, {{0.05, 0.2}, {0, 0}, 1, 1}));
    // x2: increasing mean, constant noise.
    suite.push_back(make("x2", {{0, 1}, {1, 3}, 1000, 1}, {{0.05, 0.1}, {0, 0}, 1, 1}));
    // x3: piecewise-varying slope, constant noise.
    suite.push_back(make("x3", {{0, 1}, {-2, 2}, 250, 4}, {{0.05, 0.1}, {0, 0}, 1, 1}));
    // x4: constant mean, noise growing with t.
    suite.push_back(make("x4", {{2, 5}, {0, 0}, 1, 1}, {{0, 0.01}, {0.0002, 0.001}, 1, 1}));
    // x5: varying slope, moderate noise.
    suite.push_back(make("x5", {{2, 5}, {-2, 4}, 200, 3}, {{0.1, 0.3}, {0, 0}, 1, 1}));
    // x6: m = U(2,5) + U(0.2,4)/80 t, s = U(0,0.001) + U(0.002,0.01) t.
    auto x6 = make("x6", {{2, 5}, {0.2, 4}, 80, 1}, {{0, 0.001}, {0.002, 0.01}, 1, 1});
    x6.definition = "published";
    suite.push_back(std::move(x6));
    return suite;
}

std::optional<InstanceSpec> builtin_spec(std::string_view name, std::uint64_t seed,
                                         std::size_t rows, std::size_t length) {
    for (auto& s : builtin_suite(seed, rows, length))
        if (s.name == name) return s;
    return std::nullopt;
}

}  // namespace segopt
