#include "segopt/instance_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace segopt {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(std::string_view token) {
    double v = 0.0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw FormatError("invalid number '" + std::string(token) + "'");
    return v;
}

std::uint64_t parse_uint(std::string_view token) {
    std::uint64_t v = 0;
    const auto* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), last, v);
    if (ec != std::errc() || ptr != last)
        throw FormatError("invalid integer '" + std::string(token) + "'");
    return v;
}

void write_instance(std::ostream& out, const InstanceFile& inst) {
    const auto& p = inst.problem;
    out << "name: " << p.name() << '\n'
        << "definition: " << inst.definition << '\n'
        << "M: " << p.rows() << '\n'
        << "N: " << p.length() << '\n'
        << "aggregation: " << to_string(p.aggregation()) << '\n'
        << "reference_start: " << p.reference().start() << '\n'
        << "reference_end: " << p.reference().end() << '\n'
        << "generator_seed: " << inst.generator_seed << '\n'
        << "rows:\n";
    for (std::size_t i = 0; i < p.rows(); ++i) {
        const auto row = p.dataset().row(i);
        for (std::size_t t = 0; t < row.size(); ++t) {
            if (t) out << ' ';
            out << format_double(row[t]);
        }
        out << '\n';
    }
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

}  // namespace

InstanceFile read_instance(std::istream& in) {
    std::map<std::string, std::string, std::less<>> header;
    std::string line;
    bool rows_block = false;
    while (std::getline(in, line)) {
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto colon = t.find(':');
        if (colon == std::string_view::npos) throw FormatError("expected 'key: value', got '" + line + "'");
        const auto key = trim(t.substr(0, colon));
        if (key == "rows") {
            rows_block = true;
            break;
        }
        header.emplace(std::string(key), std::string(trim(t.substr(colon + 1))));
    }
    if (!rows_block) throw FormatError("missing 'rows:' block");

    auto field = [&](std::string_view key) -> const std::string& {
        const auto it = header.find(key);
        if (it == header.end()) throw FormatError("missing field '" + std::string(key) + "'");
        return it->second;
    };

    const auto m = parse_uint(field("M"));
    const auto n = parse_uint(field("N"));
    const auto agg = parse_aggregation(field("aggregation"));
    if (!agg) throw FormatError("unknown aggregation '" + field("aggregation") + "'");

    std::vector<double> values;
    values.reserve(m * n);
    for (std::uint64_t i = 0; i < m; ++i) {
        if (!std::getline(in, line)) throw FormatError("expected " + std::to_string(m) + " rows");
        std::istringstream ls(line);
        std::string tok;
        std::uint64_t count = 0;
        while (ls >> tok) {
            values.push_back(parse_double(tok));
            ++count;
        }
        if (count != n)
            throw FormatError("row " + std::to_string(i) + " has " + std::to_string(count) +
                              " values, expected " + std::to_string(n));
    }

    InstanceFile out{
        SegmentProblem(field("name"), VectorDataset(m, n, std::move(values)), *agg,
                       Window(parse_uint(field("reference_start")), parse_uint(field("reference_end")))),
        parse_uint(field("generator_seed")),
        header.contains("definition") ? header.find("definition")->second : "artifact-defined"};
    return out;
}

void save_instance(const std::filesystem::path& path, const InstanceFile& inst) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_instance(out, inst);
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

InstanceFile load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    try {
        return read_instance(in);
    } catch (const std::invalid_argument& e) {
        throw FormatError(path.string() + ": " + e.what());
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

}  // namespace segopt
