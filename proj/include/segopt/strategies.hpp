#pragma once

// Guiding strategies build a search region around the current window; sampling
// strategies draw candidate index tuples from it.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "segopt/gradient.hpp"
#include "segopt/rng.hpp"

namespace segopt {

enum class GuidingMode { full, direction, range };
enum class SamplingMode { exhaustive, random, orthogonal };

std::string_view to_string(GuidingMode m) noexcept;
std::string_view to_string(SamplingMode m) noexcept;
std::optional<GuidingMode> parse_guiding_mode(std::string_view s) noexcept;
std::optional<SamplingMode> parse_sampling_mode(std::string_view s) noexcept;

struct GuidingConfig {
    GuidingMode mode = GuidingMode::full;
    bool guided = false;      // gradient-guided vs random; ignored for full
    double step_size = 1.0;   // range only
    std::int64_t search_width = 0;  // range only

    void validate() const;
};

struct SamplingConfig {
    SamplingMode mode = SamplingMode::random;
    std::size_t sample_size = 10;  // random / orthogonal

    void validate() const;
};

/// One or two inclusive intervals. With two intervals and `ordered` set, the
/// intervals are equal and only pairs with first <= second belong to the
/// region (the joint window triangle).
struct SearchRegion {
    std::vector<IndexRange> intervals;
    bool ordered = false;

    std::size_t dims() const noexcept { return intervals.size(); }
    /// Number of points in the region.
    std::uint64_t size() const;
    bool contains(std::array<std::int64_t, 2> p) const;
};

/// Candidate coordinates; a one-dimensional region only fills element 0.
using Candidate = std::array<std::int64_t, 2>;

/// Round half away from zero.
std::int64_t round_index(double x) noexcept;

// --- guiding -----------------------------------------------------------------

/// Whole valid range of one dimension.
IndexRange region_full(IndexRange valid);

/// Joint region over all windows of length-N vectors (start <= end).
SearchRegion region_full_joint(std::size_t length);

/// One side of `current`: descent > 0 gives [current+1, hi], descent < 0 gives
/// [lo, current-1]. Zero descent or an empty side yields [current, current].
IndexRange region_direction(std::int64_t current, int descent, IndexRange valid);

/// Direction with descent = -sign(gradient).
IndexRange region_direction_guided(std::int64_t current, double gradient, IndexRange valid);
/// Direction with a uniformly random descent in {-1, +1}.
IndexRange region_direction_random(std::int64_t current, Rng& rng, IndexRange valid);

/// [next - width, next + width] intersected with `valid`; if that is empty the
/// singleton at the valid index nearest to `next`.
IndexRange region_around(double next, std::int64_t width, IndexRange valid);

/// next = current - round(step_size * gradient).
IndexRange region_range_guided(std::int64_t current, double gradient, const GuidingConfig& cfg,
                               IndexRange valid);
/// next = current + s * round(step_size * u), s in {-1, +1}, u in (0, 1].
IndexRange region_range_random(std::int64_t current, Rng& rng, const GuidingConfig& cfg,
                               IndexRange valid);

// --- sampling ----------------------------------------------------------------

class InfeasibleEnumeration : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t exhaustive_guard = 1'000'000;

/// Every point, ascending lexicographic order. Throws InfeasibleEnumeration
/// above `guard` points.
std::vector<Candidate> sample_exhaustive(const SearchRegion& region,
                                         std::uint64_t guard = exhaustive_guard);

/// min(k, |region|) distinct points drawn uniformly without replacement, in
/// draw order.
std::vector<Candidate> sample_random(const SearchRegion& region, std::size_t k, Rng& rng);

/// k equally spaced reals per interval, rounded and deduplicated; product
/// across intervals (ordered regions drop pairs with first > second).
std::vector<Candidate> sample_orthogonal(const SearchRegion& region, std::size_t k);

/// Orthogonal points of one interval.
std::vector<std::int64_t> orthogonal_points(IndexRange r, std::size_t k);

std::vector<Candidate> sample(const SearchRegion& region, const SamplingConfig& cfg, Rng& rng);

}  // namespace segopt
