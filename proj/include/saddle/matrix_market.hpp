#pragma once

#include <filesystem>
#include <iosfwd>

#include "saddle/linop.hpp"

namespace saddle {

// Matrix Market exchange format, coordinate layout only. Supported fields are
// `real` and `integer`; supported symmetries are `general` and `symmetric`
// (expanded to full storage on load). Indices in the file are 1-based,
// duplicate coordinates are summed.

SparseMatrix read_matrix_market(const std::filesystem::path& path);
SparseMatrix parse_matrix_market(std::istream& in);

/// Writes `general` coordinate format with 17 significant digits.
void write_matrix_market(std::ostream& out, const SparseMatrix& m);
void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& m);

}  // namespace saddle
