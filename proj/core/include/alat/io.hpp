#pragma once

#include <string>
#include <string_view>

#include "alat/point_set.hpp"

namespace alat {

/// PointSet as CSV. Metadata sits in leading `# key: value` lines; each row
/// holds the exact integer pairs (a, b) of every coordinate a + b sqrt(d)
/// followed by the real embedding written with %.17g.
std::string pointset_to_csv(const PointSet& set);

/// Inverse of pointset_to_csv. Throws ParseError with the line and column of
/// the first problem, including metadata that violates PointSet invariants.
PointSet pointset_from_csv(std::string_view text);

void save_pointset(const PointSet& set, const std::string& path);
PointSet load_pointset(const std::string& path);

/// Whole file as a string; InvalidArgument if it cannot be read.
std::string read_file(const std::string& path);
/// Writes bytes verbatim; InvalidArgument on failure.
void write_file(const std::string& path, std::string_view bytes);

/// %.17g.
std::string format_double(double x);

}  // namespace alat
