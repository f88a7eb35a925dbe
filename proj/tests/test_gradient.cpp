#include <doctest.h>

#include <cmath>

#include "segopt/gradient.hpp"
#include "test_util.hpp"

using namespace segopt;

TEST_SUITE("gradient") {

TEST_CASE("stencil on closed-form functions") {
    const IndexRange wide{-1000, 1000};
    const auto sq = five_point_stencil([](std::int64_t k) { return double(k * k); }, 5, wide);
    CHECK(sq.derivative == 10.0);  // (9 - 8*16 + 8*36 - 49) / 12
    CHECK(sq.evaluations == 4);

    for (std::int64_t x : {-7, 0, 3, 250}) {
        const auto lin = five_point_stencil([](std::int64_t k) { return 3.0 * double(k); }, x, wide);
        CHECK(lin.derivative == 3.0);
    }
    const auto flat = five_point_stencil([](std::int64_t) { return 4.25; }, 0, wide);
    CHECK(flat.derivative == 0.0);
}

TEST_CASE("stencil is exact for polynomials up to degree four") {
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        double c[5];
        for (double& v : c) v = to_unit(rng.next()) * 4.0 - 2.0;
        auto poly = [&](std::int64_t k) {
            const double x = double(k);
            return (((c[4] * x + c[3]) * x + c[2]) * x + c[1]) * x + c[0];
        };
        const IndexRange r{0, 50};
        for (std::int64_t x = 2; x <= 48; ++x) {
            const double xd = double(x);
            const double analytic = ((4 * c[4] * xd + 3 * c[3]) * xd + 2 * c[2]) * xd + c[1];
            const double got = five_point_stencil(poly, x, r).derivative;
            const double scale = std::max(std::abs(analytic), 1.0);
            CHECK(std::abs(got - analytic) / scale <= 1e-9);
        }
    }
}

TEST_CASE("stencil clamps boundary points and evaluates duplicates once") {
    int calls = 0;
    auto g = [&](std::int64_t k) {
        ++calls;
        return double(k * k);
    };
    const IndexRange r{0, 9};
    // x = 0: points {-2,-1,1,2} -> {0,0,1,2}: three distinct.
    auto res = five_point_stencil(g, 0, r);
    CHECK(res.evaluations == 3);
    CHECK(calls == 3);
    CHECK(std::isfinite(res.derivative));
    // (0 - 8*0 + 8*1 - 4) / 12
    CHECK(res.derivative == doctest::Approx(4.0 / 12.0));

    calls = 0;
    res = five_point_stencil(g, 9, r);  // {7,8,9,9}
    CHECK(res.evaluations == 3);
    CHECK(calls == 3);

    calls = 0;
    res = five_point_stencil(g, 3, IndexRange{3, 3});  // everything clamps to 3
    CHECK(res.evaluations == 1);
    CHECK(res.derivative == 0.0);
}

TEST_CASE("valid ranges follow the other index") {
    CHECK(valid_range(Window(3, 7), Dimension::start, 10) == IndexRange{0, 7});
    CHECK(valid_range(Window(3, 7), Dimension::end, 10) == IndexRange{3, 9});
    CHECK(with_index(Window(3, 7), Dimension::start, 5) == Window(5, 7));
    CHECK(with_index(Window(3, 7), Dimension::end, 3) == Window(3, 3));
}

TEST_CASE("stencil_derivative accounting") {
    const auto p = test::random_problem(5, 6, 40);
    for (std::size_t a : {0u, 1u, 10u, 39u}) {
        const Window w(a, 39);
        for (auto d : {Dimension::start, Dimension::end}) {
            EvaluationCounter c(100);
            const double v = stencil_derivative(p, w, d, c);
            CHECK(std::isfinite(v));
            CHECK(c.used() >= 1);
            CHECK(c.used() <= 4);
        }
    }
}

TEST_CASE("constant dataset gives zero gradient") {
    const SegmentProblem p("flat", VectorDataset({{2, 2, 2, 2, 2, 2, 2, 2}, {1, 1, 1, 1, 1, 1, 1, 1}}),
                           Aggregation::mean, Window(2, 5));
    EvaluationCounter c(100);
    const auto g = estimate_gradient(p, Window(3, 6), DimensionSet::only(Dimension::start), c);
    CHECK(g.d_start == 0.0);
    CHECK(g.d_end == 0.0);
    CHECK(g.evaluations_spent <= 4);
    CHECK(static_cast<std::uint64_t>(g.evaluations_spent) == c.used());
}

TEST_CASE("estimate_gradient over both dimensions spends at most eight") {
    const auto p = test::random_problem(8, 5, 50);
    EvaluationCounter c(1000);
    const auto g = estimate_gradient(p, Window(10, 30), DimensionSet::both(), c);
    CHECK(g.evaluations_spent <= 8);
    CHECK(static_cast<std::uint64_t>(g.evaluations_spent) == c.used());
    CHECK_THROWS_AS(estimate_gradient(p, Window(10, 30), DimensionSet{}, c), std::invalid_argument);
}

TEST_CASE("gradient sign agrees with central differences on a smooth instance") {
    const auto p = test::generated("x2", 3, 10, 400);
    int compared = 0;
    for (std::size_t a = 20; a + 40 < 400; a += 37) {
        for (std::size_t b = a + 20; b + 3 < 400; b += 53) {
            const Window w(a, b);
            for (auto d : {Dimension::start, Dimension::end}) {
                const auto x = static_cast<std::int64_t>(d == Dimension::start ? a : b);
                const IndexRange r = valid_range(w, d, p.length());
                if (x - 2 < r.lo || x + 2 > r.hi) continue;
                const double central =
                    (evaluate(p, with_index(w, d, x + 1)) - evaluate(p, with_index(w, d, x - 1))) / 2.0;
                // Only landscapes with a clear local slope are compared.
                if (std::abs(central) < 1e-6 * (1.0 + evaluate(p, w))) continue;
                EvaluationCounter c(10);
                const double s = stencil_derivative(p, w, d, c);
                CHECK(std::signbit(s) == std::signbit(central));
                ++compared;
            }
        }
    }
    CHECK(compared > 20);
}

TEST_CASE("budget exhaustion mid-stencil") {
    const auto p = test::random_problem(4, 3, 30);
    EvaluationCounter c(2);
    CHECK_THROWS_AS(stencil_derivative(p, Window(10, 20), Dimension::start, c), BudgetExhausted);
    CHECK(c.used() == 2);
}

}  // TEST_SUITE
