#pragma once

#include <cstdint>
#include <memory>

#include "diamond/sparse_matrix.hpp"

namespace diamond::synthetic {

/// rows x cols fully populated with values uniform in [lo, hi).
SparseMatrix random_dense(Index rows, Index cols, double lo, double hi, std::uint64_t seed);

/// Each column gets per_col distinct random rows; values are 1 when binary,
/// otherwise uniform in [1, 5).
SparseMatrix random_sparse(Index rows, Index cols, Index per_col, bool binary,
                           std::uint64_t seed);

/// Binary A (d x m) and B (d x n) where every pair (i, j) shares `background`
/// all-ones rows, and one planted pair additionally shares
/// (factor - 1) * background rows, so c = factor * background there and
/// c = background everywhere else.
struct PlantedPair {
  std::shared_ptr<const SparseMatrix> a;
  std::shared_ptr<const SparseMatrix> b;
  Index planted_i = 0;
  Index planted_j = 0;
  double planted_c = 0.0;
  double background_c = 0.0;
};
PlantedPair planted_pair(Index m, Index n, Index background, Index factor, Index planted_i = 0,
                         Index planted_j = 0);

/// Sparse binary d x m matrix (per_col random rows per column) in which the
/// first block_cols columns also share block_rows common rows, giving
/// block_cols * (block_cols - 1) / 2 large Gram entries.
SparseMatrix planted_gram(Index d, Index m, Index per_col, Index block_cols, Index block_rows,
                          std::uint64_t seed);

}  // namespace diamond::synthetic
