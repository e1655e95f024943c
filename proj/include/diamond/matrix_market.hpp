#pragma once

#include <filesystem>
#include <iosfwd>

#include "diamond/sparse_matrix.hpp"

namespace diamond {

/// How a file's axes map onto the sampler convention (rows = shared dimension).
enum class Orientation {
  RowMajor,  ///< file rows are the shared dimension; loaded as stored
  ColMajor,  ///< file columns are the shared dimension; transposed on load
};

/// Reads MatrixMarket coordinate or array files (real, integer or pattern;
/// general, symmetric or skew-symmetric). Symmetric storage is expanded,
/// 1-based indices become 0-based. Throws InputError on a malformed header,
/// out-of-bounds index, duplicate coordinate or truncated data.
SparseMatrix load_matrix_market(const std::filesystem::path& path,
                                Orientation orientation = Orientation::RowMajor);
SparseMatrix read_matrix_market(std::istream& in,
                                Orientation orientation = Orientation::RowMajor);

/// Writes coordinate real general format with round-trip exact values.
void write_matrix_market(std::ostream& out, const SparseMatrix& m);
void save_matrix_market(const std::filesystem::path& path, const SparseMatrix& m);

// Compact binary cache: magic, version, dims, then both compressed layouts.
void save_binary_cache(const std::filesystem::path& path, const SparseMatrix& m);
SparseMatrix load_binary_cache(const std::filesystem::path& path);

}  // namespace diamond
