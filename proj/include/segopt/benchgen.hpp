#pragma once

// Synthetic benchmark instances: per-row control values drive a per-index
// normal distribution N(m_t, s_t^2).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "segopt/core.hpp"

namespace segopt {

struct UniformRange {
    double lo;
    double hi;
};

/// c(t) = base + slope * t with base ~ U(base) and slope ~ U(scale) / divisor,
/// drawn once per row. With pieces > 1 the index range is cut into equal
/// pieces, each with its own slope, joined continuously.
struct ControlExpression {
    UniformRange base{0.0, 0.0};
    UniformRange scale{0.0, 0.0};
    double divisor = 1.0;
    std::size_t pieces = 1;

    void validate() const;
    bool non_negative() const noexcept {
        return base.lo >= 0.0 && base.hi >= 0.0 && scale.lo >= 0.0 && scale.hi >= 0.0;
    }
};

/// Per-row realisation of a ControlExpression.
struct ControlDraw {
    double base = 0.0;
    std::vector<double> slopes;  // already divided by the divisor

    double at(std::size_t t, std::size_t length) const;
};

struct InstanceSpec {
    std::string name;
    ControlExpression mean_control;
    ControlExpression sd_control;
    std::size_t rows = 20;
    std::size_t length = 1000;
    Aggregation aggregation = Aggregation::mean;
    double min_width_fraction = 0.05;  // reference width >= ceil(fraction * N), at least 1
    std::uint64_t seed = 0;
    /// "published" for the instance whose constants are published, otherwise
    /// "artifact-defined".
    std::string definition = "artifact-defined";

    void validate() const;
    std::size_t min_width() const;
};

/// Row control draws, exposed for tests and diagnostics.
ControlDraw draw_control(const ControlExpression& c, std::uint64_t seed, std::size_t row,
                         std::uint64_t stream);

/// Deterministic in spec.seed on every platform: uniforms come from a
/// counter-based SplitMix64 hash and normals from the Box-Muller transform.
SegmentProblem generate_instance(const InstanceSpec& spec);

/// Reference window drawn uniformly among windows of width >= min_width.
Window draw_reference_window(std::size_t length, std::size_t min_width, std::uint64_t seed);

/// Built-in specs x1..x6 (x6 uses the published control formula).
std::vector<InstanceSpec> builtin_suite(std::uint64_t seed = 0, std::size_t rows = 20,
                                        std::size_t length = 1000);
std::optional<InstanceSpec> builtin_spec(std::string_view name, std::uint64_t seed = 0,
                                         std::size_t rows = 20, std::size_t length = 1000);

}  // namespace segopt
