#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "rearr/lattice.hpp"

namespace rearr {

/// Reads the tab-separated sparse-function format: one data line per point,
/// `x1<TAB>...<TAB>xd<TAB>value` with value > 0, `#` comment lines, dimension
/// inferred from the first data line.  Duplicate points, malformed lines and
/// nonpositive values are reported with their line number.
SparseFunction parse_sparse_function(std::istream& in, const std::string& source_name);
SparseFunction read_sparse_function(const std::filesystem::path& path);

void write_sparse_function(std::ostream& out, const SparseFunction& u);
void write_sparse_function(const std::filesystem::path& path, const SparseFunction& u);

/// FNV-1a digest of the file bytes, as a fixed-width hex string.
std::string file_digest(const std::filesystem::path& path);

}  // namespace rearr
