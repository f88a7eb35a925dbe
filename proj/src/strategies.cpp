#include "segopt/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace segopt {

std::string_view to_string(GuidingMode m) noexcept {
    switch (m) {
        case GuidingMode::full: return "full";
        case GuidingMode::direction: return "direction";
        case GuidingMode::range: return "range";
    }
    return "?";
}

std::string_view to_string(SamplingMode m) noexcept {
    switch (m) {
        case SamplingMode::exhaustive: return "exhaustive";
        case SamplingMode::random: return "random";
        case SamplingMode::orthogonal: return "orthogonal";
    }
    return "?";
}

std::optional<GuidingMode> parse_guiding_mode(std::string_view s) noexcept {
    for (auto m : {GuidingMode::full, GuidingMode::direction, GuidingMode::range})
        if (to_string(m) == s) return m;
    return std::nullopt;
}

std::optional<SamplingMode> parse_sampling_mode(std::string_view s) noexcept {
    for (auto m : {SamplingMode::exhaustive, SamplingMode::random, SamplingMode::orthogonal})
        if (to_string(m) == s) return m;
    return std::nullopt;
}

void GuidingConfig::validate() const {
    if (mode == GuidingMode::range && !(step_size > 0.0 && std::isfinite(step_size)))
        throw std::invalid_argument("range guiding needs a finite step_size > 0");
    if (search_width < 0) throw std::invalid_argument("search_width must be >= 0");
}

void SamplingConfig::validate() const {
    if (sample_size < 1) throw std::invalid_argument("sample_size must be >= 1");
}

std::uint64_t SearchRegion::size() const {
    if (intervals.empty()) return 0;
    if (intervals.size() == 1) return intervals[0].size();
    if (ordered) {
        const std::uint64_t n = intervals[0].size();
        return n * (n + 1) / 2;
    }
    return intervals[0].size() * intervals[1].size();
}

bool SearchRegion::contains(std::array<std::int64_t, 2> p) const {
    for (std::size_t d = 0; d < intervals.size(); ++d)
        if (!intervals[d].contains(p[d])) return false;
    return !(ordered && p[0] > p[1]);
}

std::int64_t round_index(double x) noexcept { return static_cast<std::int64_t>(std::round(x)); }

// --- guiding -----------------------------------------------------------------

IndexRange region_full(IndexRange valid) {
    if (valid.lo > valid.hi) throw std::invalid_argument("empty valid range");
    return valid;
}

SearchRegion region_full_joint(std::size_t length) {
    const IndexRange all{0, static_cast<std::int64_t>(length) - 1};
    return {{all, all}, true};
}

IndexRange region_direction(std::int64_t current, int descent, IndexRange valid) {
    if (descent > 0 && current < valid.hi) return {current + 1, valid.hi};
    if (descent < 0 && current > valid.lo) return {valid.lo, current - 1};
    return {current, current};
}

IndexRange region_direction_guided(std::int64_t current, double gradient, IndexRange valid) {
    const int descent = gradient > 0.0 ? -1 : (gradient < 0.0 ? 1 : 0);
    return region_direction(current, descent, valid);
}

IndexRange region_direction_random(std::int64_t current, Rng& rng, IndexRange valid) {
    return region_direction(current, rng.sign(), valid);
}

IndexRange region_around(double next, std::int64_t width, IndexRange valid) {
    // Pull far-away targets in first so the integer conversion cannot overflow;
    // any target beyond this margin yields the same region.
    const double margin = static_cast<double>(width) + 1.0;
    next = std::clamp(next, static_cast<double>(valid.lo) - margin,
                      static_cast<double>(valid.hi) + margin);
    const auto centre = static_cast<std::int64_t>(next);
    const std::int64_t lo = std::max(centre - width, valid.lo);
    const std::int64_t hi = std::min(centre + width, valid.hi);
    if (lo <= hi) return {lo, hi};
    const std::int64_t nearest = valid.clamp(centre);
    return {nearest, nearest};
}

IndexRange region_range_guided(std::int64_t current, double gradient, const GuidingConfig& cfg,
                               IndexRange valid) {
    const double step = std::isfinite(gradient) ? std::round(cfg.step_size * gradient) : 0.0;
    return region_around(static_cast<double>(current) - step, cfg.search_width, valid);
}

IndexRange region_range_random(std::int64_t current, Rng& rng, const GuidingConfig& cfg,
                               IndexRange valid) {
    const int s = rng.sign();
    const double u = rng.unit_open_closed();
    const double step = std::round(cfg.step_size * u);
    return region_around(static_cast<double>(current) + s * step, cfg.search_width, valid);
}

// --- sampling ----------------------------------------------------------------

namespace {

// Rank (lexicographic order) to point.
Candidate point_at(const SearchRegion& region, std::uint64_t rank) {
    const auto& iv = region.intervals;
    if (iv.size() == 1) return {iv[0].lo + static_cast<std::int64_t>(rank), 0};
    if (!region.ordered) {
        const std::uint64_t n1 = iv[1].size();
        return {iv[0].lo + static_cast<std::int64_t>(rank / n1),
                iv[1].lo + static_cast<std::int64_t>(rank % n1)};
    }
    std::uint64_t row_len = iv[0].size();
    std::int64_t a = 0;
    while (rank >= row_len) {
        rank -= row_len;
        --row_len;
        ++a;
    }
    return {iv[0].lo + a, iv[0].lo + a + static_cast<std::int64_t>(rank)};
}

}  // namespace

std::vector<Candidate> sample_exhaustive(const SearchRegion& region, std::uint64_t guard) {
    const std::uint64_t total = region.size();
    if (total > guard)
        throw InfeasibleEnumeration("exhaustive enumeration of " + std::to_string(total) +
                                    " points exceeds guard of " + std::to_string(guard));
    std::vector<Candidate> out;
    out.reserve(total);
    const auto& iv = region.intervals;
    if (iv.size() == 1) {
        for (auto i = iv[0].lo; i <= iv[0].hi; ++i) out.push_back({i, 0});
        return out;
    }
    for (auto a = iv[0].lo; a <= iv[0].hi; ++a)
        for (auto b = region.ordered ? a : iv[1].lo; b <= iv[1].hi; ++b) out.push_back({a, b});
    return out;
}

std::vector<Candidate> sample_random(const SearchRegion& region, std::size_t k, Rng& rng) {
    if (k < 1) throw std::invalid_argument("sample size must be >= 1");
    const std::uint64_t total = region.size();
    std::vector<Candidate> out;
    if (total == 0) return out;

    if (2 * static_cast<std::uint64_t>(k) > total) {
        // Dense: partial Fisher-Yates over all ranks.
        std::vector<std::uint64_t> ranks(total);
        std::iota(ranks.begin(), ranks.end(), std::uint64_t{0});
        const std::uint64_t take = std::min<std::uint64_t>(k, total);
        for (std::uint64_t i = 0; i < take; ++i) {
            const std::uint64_t j = i + rng.below(total - i);
            std::swap(ranks[i], ranks[j]);
            out.push_back(point_at(region, ranks[i]));
        }
        return out;
    }
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(k * 2);
    while (out.size() < k) {
        const std::uint64_t r = rng.below(total);
        if (seen.insert(r).second) out.push_back(point_at(region, r));
    }
    return out;
}

std::vector<std::int64_t> orthogonal_points(IndexRange r, std::size_t k) {
    if (k < 1) throw std::invalid_argument("sample size must be >= 1");
    if (r.lo == r.hi) return {r.lo};
    const auto span = r.hi - r.lo;
    if (k == 1) return {r.lo + round_index(static_cast<double>(span) / 2.0)};
    std::vector<std::int64_t> pts;
    pts.reserve(k);
    const auto denom = static_cast<double>(k - 1);
    for (std::size_t j = 0; j < k; ++j) {
        const double offset = static_cast<double>(static_cast<std::int64_t>(j) * span) / denom;
        const std::int64_t p = r.lo + round_index(offset);
        if (pts.empty() || pts.back() != p) pts.push_back(p);
    }
    return pts;
}

std::vector<Candidate> sample_orthogonal(const SearchRegion& region, std::size_t k) {
    std::vector<Candidate> out;
    const auto& iv = region.intervals;
    if (iv.empty()) return out;
    const auto first = orthogonal_points(iv[0], k);
    if (iv.size() == 1) {
        for (auto p : first) out.push_back({p, 0});
        return out;
    }
    const auto second = orthogonal_points(iv[1], k);
    for (auto a : first)
        for (auto b : second)
            if (!region.ordered || a <= b) out.push_back({a, b});
    return out;
}

std::vector<Candidate> sample(const SearchRegion& region, const SamplingConfig& cfg, Rng& rng) {
    switch (cfg.mode) {
        case SamplingMode::exhaustive: return sample_exhaustive(region);
        case SamplingMode::random: return sample_random(region, cfg.sample_size, rng);
        case SamplingMode::orthogonal: return sample_orthogonal(region, cfg.sample_size);
    }
    throw std::invalid_argument("unknown sampling mode");
}

}  // namespace segopt
