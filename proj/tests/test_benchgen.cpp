#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <sstream>

#include "segopt/benchgen.hpp"
#include "segopt/instance_io.hpp"
#include "test_util.hpp"

using namespace segopt;

namespace {

std::vector<double> vec(std::span<const double> s) { return {s.begin(), s.end()}; }

double slope_ls(std::span<const double> row) {
    const double n = static_cast<double>(row.size());
    const double tbar = (n - 1) / 2;
    const double vbar = std::accumulate(row.begin(), row.end(), 0.0) / n;
    double num = 0, den = 0;
    for (std::size_t t = 0; t < row.size(); ++t) {
        num += (double(t) - tbar) * (row[t] - vbar);
        den += (double(t) - tbar) * (double(t) - tbar);
    }
    return num / den;
}

double sd_of(std::span<const double> v) {
    const double m = std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / double(v.size()));
}

std::vector<double> ranks(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size(); ++i) r[idx[i]] = double(i);
    return r;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const double n = double(a.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

}  // namespace

TEST_SUITE("benchgen") {

TEST_CASE("built-in suite") {
    const auto suite = builtin_suite(1);
    REQUIRE(suite.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(suite[i].name == "x" + std::to_string(i + 1));
        CHECK(suite[i].definition == (i == 5 ? "published" : "artifact-defined"));
        CHECK_NOTHROW(suite[i].validate());
    }
    const auto& x6 = suite[5];
    CHECK(x6.mean_control.base.lo == 2);
    CHECK(x6.mean_control.base.hi == 5);
    CHECK(x6.mean_control.scale.lo == 0.2);
    CHECK(x6.mean_control.scale.hi == 4);
    CHECK(x6.mean_control.divisor == 80);
    CHECK(x6.sd_control.base.lo == 0);
    CHECK(x6.sd_control.base.hi == 0.001);
    CHECK(x6.sd_control.scale.lo == 0.002);
    CHECK(x6.sd_control.scale.hi == 0.01);
    CHECK_FALSE(builtin_spec("x7"));
}

TEST_CASE("control draws") {
    const ControlExpression c{{2, 5}, {0.2, 4}, 80, 1};
    for (std::size_t row = 0; row < 50; ++row) {
        const auto d = draw_control(c, 3, row, 1);
        CHECK(d.base >= 2);
        CHECK(d.base <= 5);
        REQUIRE(d.slopes.size() == 1);
        CHECK(d.slopes[0] >= 0.2 / 80);
        CHECK(d.slopes[0] <= 4.0 / 80);
        CHECK(d.at(0, 100) == d.base);
        CHECK(d.at(10, 100) == doctest::Approx(d.base + 10 * d.slopes[0]));
    }
    // Piecewise control is continuous: at piece boundaries the left and right
    // limits agree.
    const ControlDraw pw{1.0, {1.0, -2.0, 0.5}};
    CHECK(pw.at(0, 9) == 1.0);
    CHECK(pw.at(3, 9) == 4.0);
    CHECK(pw.at(4, 9) == 2.0);
    CHECK(pw.at(6, 9) == -2.0);
    CHECK(pw.at(8, 9) == -1.0);
}

TEST_CASE("x2 rows trend upwards") {
    const auto p = test::generated("x2", 4, 20, 1000);
    for (std::size_t i = 0; i < p.rows(); ++i) CHECK(slope_ls(p.dataset().row(i)) > 0.0);
}

TEST_CASE("x6 noise grows along the index") {
    const std::size_t n = 1000;
    const auto spec = *builtin_spec("x6", 8, 40, n);
    const auto p = generate_instance(spec);
    int louder = 0;
    for (std::size_t i = 0; i < p.rows(); ++i) {
        const auto row = p.dataset().row(i);
        // Detrend with the row's own mean control before comparing spreads.
        const auto m = draw_control(spec.mean_control, spec.seed, i, 1);
        std::vector<double> resid(n), absres(n), t(n);
        for (std::size_t k = 0; k < n; ++k) {
            resid[k] = row[k] - m.at(k, n);
            absres[k] = std::abs(resid[k]);
            t[k] = double(k);
        }
        const std::span<const double> r(resid);
        if (sd_of(r.subspan(800, 200)) > sd_of(r.subspan(0, 200))) ++louder;
        CHECK(pearson(ranks(absres), t) > 0.0);
    }
    CHECK(louder >= 38);  // at least 95 % of rows
}

TEST_CASE("constant controls give a flat landscape") {
    InstanceSpec s;
    s.name = "flat";
    s.mean_control = {{3, 3}, {0, 0}, 1, 1};
    s.sd_control = {{0, 0}, {0, 0}, 1, 1};
    s.rows = 4;
    s.length = 30;
    s.seed = 5;
    const auto p = generate_instance(s);
    for (std::size_t a = 0; a < 30; ++a)
        for (std::size_t b = a; b < 30; ++b) CHECK(evaluate(p, Window(a, b)) == 0.0);
}

TEST_CASE("generation is deterministic and well formed") {
    for (const auto& spec : builtin_suite(11, 6, 300)) {
        const auto a = generate_instance(spec);
        const auto b = generate_instance(spec);
        CHECK(vec(a.dataset().values()) == vec(b.dataset().values()));
        CHECK(a.reference() == b.reference());
        CHECK(a.reference().width() >= spec.min_width());
        for (double v : vec(a.dataset().values())) CHECK(std::isfinite(v));
        CHECK(evaluate(a, a.reference()) == 0.0);
    }
    const auto s1 = builtin_suite(1, 4, 100);
    const auto s2 = builtin_suite(2, 4, 100);
    CHECK(vec(generate_instance(s1[0]).dataset().values()) != vec(generate_instance(s2[0]).dataset().values()));
}

TEST_CASE("reference window respects the minimum width") {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const Window w = draw_reference_window(50, 7, seed);
        CHECK(w.width() >= 7);
        CHECK(w.fits(50));
    }
    CHECK(draw_reference_window(10, 10, 3) == Window(0, 9));
    CHECK_THROWS_AS(draw_reference_window(10, 11, 3), std::invalid_argument);
    CHECK_THROWS_AS(draw_reference_window(10, 0, 3), std::invalid_argument);
}

TEST_CASE("invalid specs are rejected") {
    auto s = *builtin_spec("x1");
    s.sd_control.base = {-1, 1};
    CHECK_THROWS_AS(generate_instance(s), std::invalid_argument);
    s = *builtin_spec("x1");
    s.length = 1;
    CHECK_THROWS_AS(generate_instance(s), std::invalid_argument);
    s = *builtin_spec("x1");
    s.mean_control.pieces = 0;
    CHECK_THROWS_AS(generate_instance(s), std::invalid_argument);
}

TEST_CASE("instance files round-trip exactly") {
    const auto spec = *builtin_spec("x6", 21, 5, 120);
    const InstanceFile inst{generate_instance(spec), spec.seed, spec.definition};
    std::stringstream ss;
    write_instance(ss, inst);
    const auto back = read_instance(ss);
    CHECK(vec(back.problem.dataset().values()) == vec(inst.problem.dataset().values()));
    CHECK(back.problem.reference() == inst.problem.reference());
    CHECK(vec(back.problem.reference_aggregates()) == vec(inst.problem.reference_aggregates()));
    CHECK(back.problem.name() == "x6");
    CHECK(back.generator_seed == spec.seed);
    CHECK(back.definition == "published");

    const auto path = std::filesystem::temp_directory_path() / "segopt_roundtrip.inst";
    save_instance(path, inst);
    CHECK(vec(load_instance(path).problem.dataset().values()) == vec(inst.problem.dataset().values()));
    std::filesystem::remove(path);
}

TEST_CASE("malformed instance files") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_instance(in);
    };
    const std::string head = "name: t\nM: 1\nN: 3\naggregation: mean\nreference_start: 0\n"
                             "reference_end: 1\ngenerator_seed: 0\n";
    CHECK_NOTHROW(parse(head + "rows:\n1 2 3\n"));
    CHECK_THROWS_AS(parse(head + "rows:\n1 2\n"), FormatError);
    CHECK_THROWS_AS(parse(head + "rows:\n"), FormatError);
    CHECK_THROWS_AS(parse(head + "rows:\n1 x 3\n"), FormatError);
    CHECK_THROWS_AS(parse(head), FormatError);
    CHECK_THROWS_AS(parse("name: t\nrows:\n1 2\n"), FormatError);
    CHECK_THROWS_AS(load_instance("/nonexistent/dir/x.inst"), std::runtime_error);
}

}  // TEST_SUITE
