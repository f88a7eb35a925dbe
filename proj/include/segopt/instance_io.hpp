#pragma once

// Instance file: "key: value" header lines followed by a "rows:" block of M
// lines with N numbers each, printed with 17 significant digits.
//
//   name: x6
//   definition: published
//   M: 20
//   N: 1000
//   aggregation: mean
//   reference_start: 12
//   reference_end: 345
//   generator_seed: 42
//   rows:
//   3.1415926535897931 ...

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "segopt/core.hpp"

namespace segopt {

struct InstanceFile {
    SegmentProblem problem;
    std::uint64_t generator_seed = 0;
    std::string definition = "artifact-defined";
};

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void write_instance(std::ostream& out, const InstanceFile& inst);
InstanceFile read_instance(std::istream& in);

/// Throws std::runtime_error naming the path when it cannot be opened/written.
void save_instance(const std::filesystem::path& path, const InstanceFile& inst);
InstanceFile load_instance(const std::filesystem::path& path);

/// %.17g
std::string format_double(double v);
/// Parses a full token as a double; throws FormatError.
double parse_double(std::string_view token);
std::uint64_t parse_uint(std::string_view token);

}  // namespace segopt
