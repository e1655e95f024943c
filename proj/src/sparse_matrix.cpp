#include "diamond/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>

namespace diamond {

SparseMatrix SparseMatrix::from_triplets(Index rows, Index cols,
                                         std::vector<Triplet> entries) {
  for (const auto& e : entries) {
    if (e.row >= rows || e.col >= cols) {
      std::ostringstream msg;
      msg << "entry (" << e.row << ", " << e.col << ") outside declared "
          << rows << " x " << cols << " bounds";
      throw InputError(msg.str());
    }
    if (!std::isfinite(e.value)) throw InputError("non-finite matrix value");
  }
  std::sort(entries.begin(), entries.end(), [](const Triplet& x, const Triplet& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });
  for (std::size_t p = 1; p < entries.size(); ++p) {
    if (entries[p].row == entries[p - 1].row && entries[p].col == entries[p - 1].col) {
      std::ostringstream msg;
      msg << "duplicate coordinate (" << entries[p].row << ", " << entries[p].col << ")";
      throw InputError(msg.str());
    }
  }
  std::erase_if(entries, [](const Triplet& e) { return e.value == 0.0; });

  SparseMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.row_ptr_.assign(std::size_t{rows} + 1, 0);
  m.row_cols_.reserve(entries.size());
  m.row_vals_.reserve(entries.size());
  for (const auto& e : entries) {
    ++m.row_ptr_[e.row + 1];
    m.row_cols_.push_back(e.col);
    m.row_vals_.push_back(e.value);
  }
  for (Index r = 0; r < rows; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
  m.finalize();
  return m;
}

SparseMatrix SparseMatrix::from_dense(Index rows, Index cols,
                                      std::span<const double> row_major) {
  if (row_major.size() != std::size_t{rows} * cols)
    throw InputError("dense data size does not match dimensions");
  std::vector<Triplet> entries;
  entries.reserve(row_major.size());
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c)
      entries.push_back({r, c, row_major[std::size_t{r} * cols + c]});
  return from_triplets(rows, cols, std::move(entries));
}

// Builds the compressed-column copy, norms, degrees and flags from the
// compressed-row arrays.
void SparseMatrix::finalize() {
  const std::size_t nz = row_vals_.size();
  col_ptr_.assign(std::size_t{cols_} + 1, 0);
  for (Index c : row_cols_) ++col_ptr_[c + 1];
  for (Index c = 0; c < cols_; ++c) col_ptr_[c + 1] += col_ptr_[c];
  col_rows_.resize(nz);
  col_vals_.resize(nz);
  std::vector<std::size_t> next(col_ptr_.begin(), col_ptr_.end() - 1);
  for (Index r = 0; r < rows_; ++r) {
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      const std::size_t q = next[row_cols_[p]]++;
      col_rows_[q] = r;
      col_vals_[q] = row_vals_[p];
    }
  }

  std::vector<long double> rn(rows_, 0.0L), cn(cols_, 0.0L);
  long double total = 0.0L;
  is_binary_ = true;
  is_nonnegative_ = true;
  max_abs_ = 0.0;
  for (Index r = 0; r < rows_; ++r) {
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      const double v = row_vals_[p];
      const long double a = std::fabs(static_cast<long double>(v));
      rn[r] += a;
      cn[row_cols_[p]] += a;
      total += a;
      max_abs_ = std::max(max_abs_, std::fabs(v));
      if (v != 1.0) is_binary_ = false;
      if (v < 0.0) is_nonnegative_ = false;
    }
  }
  row_norms_.assign(rn.begin(), rn.end());
  col_norms_.assign(cn.begin(), cn.end());
  norm1_ = static_cast<double>(total);

  // The compressed-column arrays of M are the compressed-row arrays of Mᵀ.
  is_symmetric_ = rows_ == cols_ && row_ptr_ == col_ptr_ && row_cols_ == col_rows_ &&
                  row_vals_ == col_vals_;
}

double SparseMatrix::value_at(Index r, Index c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("value_at index out of range");
  const auto idx = row_indices(r);
  const auto it = std::lower_bound(idx.begin(), idx.end(), c);
  if (it == idx.end() || *it != c) return 0.0;
  return row_values(r)[static_cast<std::size_t>(it - idx.begin())];
}

SparseMatrix SparseMatrix::transposed() const {
  SparseMatrix t;
  t.rows_ = cols_;
  t.cols_ = rows_;
  t.row_ptr_ = col_ptr_;
  t.row_cols_ = col_rows_;
  t.row_vals_ = col_vals_;
  t.finalize();
  return t;
}

SparseMatrix SparseMatrix::column(Index c) const {
  if (c >= cols_) throw std::out_of_range("column index out of range");
  std::vector<Triplet> entries;
  const auto rows = col_indices(c);
  const auto vals = col_values(c);
  entries.reserve(rows.size());
  for (std::size_t p = 0; p < rows.size(); ++p) entries.push_back({rows[p], 0, vals[p]});
  return from_triplets(rows_, 1, std::move(entries));
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (Index r = 0; r < rows_; ++r)
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p)
      out.push_back({r, row_cols_[p], row_vals_[p]});
  return out;
}

namespace {

struct Fnv1a {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  template <typename T>
  void add(std::span<const T> data) {
    const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());
    for (std::size_t k = 0; k < data.size_bytes(); ++k) {
      h ^= bytes[k];
      h *= 0x100000001b3ULL;
    }
  }
  template <typename T>
  void add_value(const T& v) {
    add(std::span<const T>(&v, 1));
  }
};

}  // namespace

std::uint64_t SparseMatrix::content_hash() const {
  Fnv1a f;
  f.add_value(rows_);
  f.add_value(cols_);
  f.add(row_ptr());
  f.add(row_cols());
  f.add(row_vals());
  return f.h;
}

MatrixPair validate_pair(std::shared_ptr<const SparseMatrix> a,
                         std::shared_ptr<const SparseMatrix> b) {
  if (!a || !b) throw InputError("missing matrix");
  if (a->rows() != b->rows()) {
    std::ostringstream msg;
    msg << "shared dimension mismatch: A is " << a->rows() << " x " << a->cols()
        << ", B is " << b->rows() << " x " << b->cols();
    throw DimensionMismatch(msg.str());
  }
  MatrixPair pair;
  pair.a_ = std::move(a);
  pair.b_ = std::move(b);
  return pair;
}

double column_dot(const SparseMatrix& a, const SparseMatrix& b, Index i, Index j) {
  if (i >= a.cols() || j >= b.cols()) throw std::out_of_range("column_dot index out of range");
  if (a.rows() != b.rows()) throw DimensionMismatch("column_dot: row counts differ");
  const auto ar = a.col_indices(i);
  const auto av = a.col_values(i);
  const auto br = b.col_indices(j);
  const auto bv = b.col_values(j);
  double sum = 0.0;
  std::size_t p = 0, q = 0;
  while (p < ar.size() && q < br.size()) {
    if (ar[p] < br[q]) {
      ++p;
    } else if (br[q] < ar[p]) {
      ++q;
    } else {
      sum += av[p++] * bv[q++];
    }
  }
  return sum;
}

}  // namespace diamond
