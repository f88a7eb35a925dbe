#include <doctest.h>

#include <algorithm>
#include <set>

#include "segopt/strategies.hpp"

using namespace segopt;

namespace {

std::vector<std::int64_t> firsts(const std::vector<Candidate>& c) {
    std::vector<std::int64_t> out;
    for (const auto& x : c) out.push_back(x[0]);
    return out;
}

SearchRegion one(std::int64_t lo, std::int64_t hi) { return {{IndexRange{lo, hi}}, false}; }

// Random 1-D or 2-D region inside [0, 40].
SearchRegion random_region(Rng& rng) {
    auto interval = [&] {
        const auto lo = rng.between(0, 40);
        return IndexRange{lo, rng.between(lo, 40)};
    };
    switch (rng.below(3)) {
        case 0: return {{interval()}, false};
        case 1: return {{interval(), interval()}, false};
        default: {
            const auto r = interval();
            return {{r, r}, true};
        }
    }
}

}  // namespace

TEST_SUITE("strategies") {

TEST_CASE("full region") {
    CHECK(region_full(IndexRange{0, 9}) == IndexRange{0, 9});
    // Both dims, N=5, current=(1,3): start in [0,3], end in [1,4].
    CHECK(region_full(IndexRange{0, 3}) == IndexRange{0, 3});
    CHECK(region_full(IndexRange{1, 4}) == IndexRange{1, 4});
    CHECK_THROWS_AS(region_full(IndexRange{2, 1}), std::invalid_argument);

    const auto joint = region_full_joint(2);
    CHECK(joint.ordered);
    CHECK(joint.size() == 3);
    CHECK(region_full_joint(1000).size() == 500500);
}

TEST_CASE("direction region") {
    const IndexRange r{0, 9};
    CHECK(region_direction_guided(5, 2.3, r) == IndexRange{0, 4});
    CHECK(region_direction_guided(5, -0.4, r) == IndexRange{6, 9});
    CHECK(region_direction_guided(0, 1.0, r) == IndexRange{0, 0});
    CHECK(region_direction_guided(9, -1.0, r) == IndexRange{9, 9});
    CHECK(region_direction_guided(5, 0.0, r) == IndexRange{5, 5});

    Rng rng(1);
    int up = 0, down = 0;
    for (int i = 0; i < 200; ++i) {
        const auto reg = region_direction_random(5, rng, r);
        if (reg == IndexRange{6, 9}) ++up;
        else if (reg == IndexRange{0, 4}) ++down;
    }
    CHECK(up + down == 200);
    CHECK(up > 60);
    CHECK(down > 60);
}

TEST_CASE("range region") {
    GuidingConfig cfg{GuidingMode::range, true, 4.0, 3};
    // next = 50 - round(9.2) = 41
    CHECK(region_range_guided(50, 2.3, cfg, IndexRange{0, 99}) == IndexRange{38, 44});

    cfg.step_size = 1.0;
    cfg.search_width = 0;
    CHECK(region_range_guided(50, 0.1, cfg, IndexRange{0, 99}) == IndexRange{50, 50});

    cfg.search_width = 2;
    // next = -8, [-10, -6] misses [0, 9]; nearest valid index is 0.
    CHECK(region_range_guided(2, 10.0, cfg, IndexRange{0, 9}) == IndexRange{0, 0});
    // Partially outside: next = 1 -> [-1, 3] -> [0, 3].
    CHECK(region_range_guided(2, 1.0, cfg, IndexRange{0, 9}) == IndexRange{0, 3});
    // Huge gradients do not overflow.
    CHECK(region_range_guided(2, -1e300, cfg, IndexRange{0, 9}) == IndexRange{9, 9});
    // Ties round away from zero: 2.5 -> 3.
    cfg.search_width = 0;
    CHECK(region_range_guided(10, 2.5, cfg, IndexRange{0, 99}) == IndexRange{7, 7});
    CHECK(region_range_guided(10, -2.5, cfg, IndexRange{0, 99}) == IndexRange{13, 13});
}

TEST_CASE("random range region stays within step bound") {
    GuidingConfig cfg{GuidingMode::range, false, 4.0, 1};
    Rng rng(3);
    std::set<std::int64_t> centres;
    for (int i = 0; i < 500; ++i) {
        const auto reg = region_range_random(50, rng, cfg, IndexRange{0, 99});
        CHECK(reg.hi - reg.lo == 2);
        const auto centre = reg.lo + 1;
        CHECK(std::abs(centre - 50) <= 4);
        centres.insert(centre);
    }
    CHECK(centres.size() >= 8);  // every offset in -4..4 except 0 is reachable, and 0
}

TEST_CASE("exhaustive sampling") {
    CHECK(firsts(sample_exhaustive(one(2, 5))) == std::vector<std::int64_t>{2, 3, 4, 5});
    CHECK(firsts(sample_exhaustive(one(7, 7))) == std::vector<std::int64_t>{7});
    const SearchRegion r2{{IndexRange{0, 1}, IndexRange{3, 4}}, false};
    CHECK(sample_exhaustive(r2) == std::vector<Candidate>{{0, 3}, {0, 4}, {1, 3}, {1, 4}});
    const auto tri = sample_exhaustive(region_full_joint(3));
    CHECK(tri == std::vector<Candidate>{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}});
    CHECK_THROWS_AS(sample_exhaustive(region_full_joint(2000)), InfeasibleEnumeration);
    CHECK_THROWS_AS(sample_exhaustive(region_full_joint(100), 5000), InfeasibleEnumeration);
}

TEST_CASE("random sampling") {
    Rng rng(42);
    const auto s = sample_random(one(0, 9), 4, rng);
    CHECK(s.size() == 4);
    std::set<std::int64_t> uniq;
    for (const auto& c : s) {
        CHECK(c[0] >= 0);
        CHECK(c[0] <= 9);
        uniq.insert(c[0]);
    }
    CHECK(uniq.size() == 4);

    CHECK(firsts(sample_random(one(3, 3), 5, rng)) == std::vector<std::int64_t>{3});

    Rng a(7), b(7);
    CHECK(sample_random(region_full_joint(100), 25, a) == sample_random(region_full_joint(100), 25, b));
    CHECK_THROWS_AS(sample_random(one(0, 3), 0, a), std::invalid_argument);
}

TEST_CASE("random sampling is uniform (chi-squared)") {
    std::array<int, 10> counts{};
    for (std::uint64_t seed = 0; seed < 10'000; ++seed) {
        Rng rng(seed);
        counts[static_cast<std::size_t>(sample_random(one(0, 9), 1, rng)[0][0])]++;
    }
    double chi2 = 0.0;
    for (int c : counts) chi2 += (c - 1000.0) * (c - 1000.0) / 1000.0;
    CHECK(chi2 < 27.877);  // df = 9, p = 0.001

    // Same check on the dense (shuffle) path: first of 8 drawn from 10.
    counts.fill(0);
    for (std::uint64_t seed = 0; seed < 10'000; ++seed) {
        Rng rng(seed + 99'999);
        counts[static_cast<std::size_t>(sample_random(one(0, 9), 8, rng)[0][0])]++;
    }
    chi2 = 0.0;
    for (int c : counts) chi2 += (c - 1000.0) * (c - 1000.0) / 1000.0;
    CHECK(chi2 < 27.877);
}

TEST_CASE("orthogonal sampling") {
    CHECK(orthogonal_points(IndexRange{0, 10}, 5) == std::vector<std::int64_t>{0, 3, 5, 8, 10});
    CHECK(orthogonal_points(IndexRange{0, 2}, 5) == std::vector<std::int64_t>{0, 1, 2});
    CHECK(orthogonal_points(IndexRange{4, 4}, 7) == std::vector<std::int64_t>{4});
    CHECK(orthogonal_points(IndexRange{0, 10}, 1) == std::vector<std::int64_t>{5});
    CHECK(firsts(sample_orthogonal(one(0, 10), 5)) == std::vector<std::int64_t>{0, 3, 5, 8, 10});

    const SearchRegion r2{{IndexRange{0, 2}, IndexRange{5, 6}}, false};
    CHECK(sample_orthogonal(r2, 3) == std::vector<Candidate>{{0, 5}, {0, 6}, {1, 5}, {1, 6}, {2, 5}, {2, 6}});
    const auto tri = sample_orthogonal(region_full_joint(11), 3);
    CHECK(tri == std::vector<Candidate>{{0, 0}, {0, 5}, {0, 10}, {5, 5}, {5, 10}, {10, 10}});
}

TEST_CASE("sampler invariants on random regions") {
    Rng rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const SearchRegion reg = random_region(rng);
        const auto k = static_cast<std::size_t>(rng.between(1, 30));

        const auto ex = sample_exhaustive(reg);
        std::uint64_t expected = 1;
        if (reg.ordered) {
            expected = reg.size();
        } else {
            for (const auto& iv : reg.intervals) expected *= iv.size();
        }
        CHECK(ex.size() == expected);
        CHECK(std::is_sorted(ex.begin(), ex.end()));

        const auto rnd = sample_random(reg, k, rng);
        CHECK(rnd.size() == std::min<std::uint64_t>(k, reg.size()));
        CHECK(std::set<Candidate>(rnd.begin(), rnd.end()).size() == rnd.size());

        const auto orth = sample_orthogonal(reg, k);
        CHECK(std::set<Candidate>(orth.begin(), orth.end()).size() == orth.size());
        if (k >= 2 && !reg.ordered) {
            for (std::size_t d = 0; d < reg.dims(); ++d) {
                bool lo = false, hi = false;
                for (const auto& c : orth) {
                    lo |= c[d] == reg.intervals[d].lo;
                    hi |= c[d] == reg.intervals[d].hi;
                }
                CHECK(lo);
                CHECK(hi);
            }
        }

        for (const auto* set : {&ex, &rnd, &orth})
            for (const auto& c : *set) CHECK(reg.contains(c));
    }
}

TEST_CASE("stall conditions produce the singleton region") {
    GuidingConfig cfg{GuidingMode::range, true, 0.01, 0};
    CHECK(region_range_guided(17, 30.0, cfg, IndexRange{0, 99}) == IndexRange{17, 17});
    CHECK(region_direction_guided(17, 0.0, IndexRange{0, 99}) == IndexRange{17, 17});
}

TEST_CASE("config validation and names") {
    CHECK_THROWS_AS((GuidingConfig{GuidingMode::range, true, 0.0, 0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((GuidingConfig{GuidingMode::range, true, 1.0, -1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SamplingConfig{SamplingMode::random, 0}.validate()), std::invalid_argument);
    CHECK(parse_sampling_mode("orthogonal") == SamplingMode::orthogonal);
    CHECK(parse_guiding_mode("direction") == GuidingMode::direction);
    CHECK_FALSE(parse_guiding_mode("diagonal"));
}

}  // TEST_SUITE
