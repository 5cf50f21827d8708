#pragma once

#include <filesystem>
#include <iosfwd>

#include "ovkit/core/vector_family.hpp"

namespace ovkit {

/// Text format: a header line "d n [sparse_bound]" followed by n lines of d
/// characters from {0,1}. Malformed input throws InvalidArgument naming the line.
VectorFamily read_family(std::istream& in);
void write_family(std::ostream& out, const VectorFamily& family);

VectorFamily load_family(const std::filesystem::path& path);
void save_family(const std::filesystem::path& path, const VectorFamily& family);

}  // namespace ovkit
