#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "diamond/errors.hpp"

namespace diamond {

struct Triplet {
  Index row;
  Index col;
  double value;
};

/// Immutable sparse matrix stored in both compressed-row and compressed-column
/// layouts, with per-row and per-column 1-norms and degrees.
///
/// Inputs to the samplers are d x m (A) and d x n (B): rows index the shared
/// dimension, columns index the vectors whose dot products are wanted.
/// Explicit zeros are never stored; dense inputs are held fully populated in
/// the same structures.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  /// Throws InputError on out-of-range or duplicate coordinates. Zero values
  /// are dropped.
  static SparseMatrix from_triplets(Index rows, Index cols,
                                    std::vector<Triplet> entries);
  /// Row-major dense data of size rows * cols.
  static SparseMatrix from_dense(Index rows, Index cols,
                                 std::span<const double> row_major);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  std::size_t nnz() const { return row_vals_.size(); }

  // compressed-row layout
  std::span<const std::size_t> row_ptr() const { return row_ptr_; }
  std::span<const Index> row_cols() const { return row_cols_; }
  std::span<const double> row_vals() const { return row_vals_; }
  std::span<const Index> row_indices(Index r) const {
    return {row_cols_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
  }
  std::span<const double> row_values(Index r) const {
    return {row_vals_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
  }

  // compressed-column layout
  std::span<const std::size_t> col_ptr() const { return col_ptr_; }
  std::span<const Index> col_rows() const { return col_rows_; }
  std::span<const double> col_vals() const { return col_vals_; }
  std::span<const Index> col_indices(Index c) const {
    return {col_rows_.data() + col_ptr_[c], col_ptr_[c + 1] - col_ptr_[c]};
  }
  std::span<const double> col_values(Index c) const {
    return {col_vals_.data() + col_ptr_[c], col_ptr_[c + 1] - col_ptr_[c]};
  }

  std::span<const double> row_norms() const { return row_norms_; }
  std::span<const double> col_norms() const { return col_norms_; }
  std::size_t row_degree(Index r) const { return row_ptr_[r + 1] - row_ptr_[r]; }
  std::size_t col_degree(Index c) const { return col_ptr_[c + 1] - col_ptr_[c]; }
  /// Entrywise 1-norm.
  double norm1() const { return norm1_; }
  /// Largest |value|; 0 for an empty matrix.
  double max_abs() const { return max_abs_; }

  bool is_binary() const { return is_binary_; }
  bool is_nonnegative() const { return is_nonnegative_; }
  bool is_symmetric() const { return is_symmetric_; }

  /// Stored value at (r, c), or 0.
  double value_at(Index r, Index c) const;

  SparseMatrix transposed() const;
  /// The single column c as a rows() x 1 matrix.
  SparseMatrix column(Index c) const;
  /// Entries in row-major order.
  std::vector<Triplet> triplets() const;

  /// FNV-1a over dimensions and the compressed-row arrays.
  std::uint64_t content_hash() const;

 private:
  void finalize();

  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<Index> row_cols_;
  std::vector<double> row_vals_;
  std::vector<std::size_t> col_ptr_{0};
  std::vector<Index> col_rows_;
  std::vector<double> col_vals_;
  std::vector<double> row_norms_;
  std::vector<double> col_norms_;
  double norm1_ = 0.0;
  double max_abs_ = 0.0;
  bool is_binary_ = true;
  bool is_nonnegative_ = true;
  bool is_symmetric_ = false;
};

/// A (d x m) and B (d x n) sharing their row dimension. B may alias A, which
/// makes the pair a Gram pair (C = AᵀA).
class MatrixPair {
 public:
  const SparseMatrix& a() const { return *a_; }
  const SparseMatrix& b() const { return *b_; }
  std::shared_ptr<const SparseMatrix> a_ptr() const { return a_; }
  std::shared_ptr<const SparseMatrix> b_ptr() const { return b_; }
  Index shared_dim() const { return a_->rows(); }
  Index m() const { return a_->cols(); }
  Index n() const { return b_->cols(); }
  bool is_gram() const { return a_ == b_; }
  /// Gram pair whose A is itself symmetric, so C = A².
  bool is_symmetric_square() const { return is_gram() && a_->is_symmetric(); }

 private:
  friend MatrixPair validate_pair(std::shared_ptr<const SparseMatrix>,
                                  std::shared_ptr<const SparseMatrix>);
  std::shared_ptr<const SparseMatrix> a_;
  std::shared_ptr<const SparseMatrix> b_;
};

/// Throws DimensionMismatch unless a.rows() == b.rows().
MatrixPair validate_pair(std::shared_ptr<const SparseMatrix> a,
                         std::shared_ptr<const SparseMatrix> b);

/// c_ij = Σ_k a_ki b_kj, merging the two sorted columns.
/// Throws std::out_of_range for bad indices.
double column_dot(const SparseMatrix& a, const SparseMatrix& b, Index i, Index j);

}  // namespace diamond
