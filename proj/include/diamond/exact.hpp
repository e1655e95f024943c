#pragma once

#include <cstddef>
#include <vector>

#include "diamond/result.hpp"
#include "diamond/sparse_matrix.hpp"

namespace diamond {

/// Bounded heap keeping the `capacity` best (score, i, j) entries under
/// ranks_before; the worst kept entry sits at the root.
class TopKHeap {
 public:
  struct Entry {
    double score;
    Index i;
    Index j;
  };

  explicit TopKHeap(std::size_t capacity) : capacity_(capacity) { heap_.reserve(capacity); }

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return heap_.size(); }
  bool full() const { return heap_.size() >= capacity_; }
  /// Requires size() > 0.
  const Entry& worst() const { return heap_.front(); }

  /// Returns true if the entry was kept.
  bool push(double score, Index i, Index j);
  /// Pushes every entry of other; the result does not depend on merge order.
  void merge(const TopKHeap& other);
  /// Entries best-first.
  std::vector<Entry> sorted() const;

 private:
  std::size_t capacity_;
  std::vector<Entry> heap_;
};

/// Exact top-t of |c_ij| computed one column c_j = Aᵀ b_j at a time and
/// streamed through a TopKHeap; C is never stored. Auxiliary memory is one
/// length-m accumulator per worker plus the heap.
///
/// For Gram pairs with exclude_diagonal only i < j is considered. When t
/// exceeds the number of admissible pairs, every pair is returned and
/// fewer_than_requested is set; fewer_nonzero is set when the answer holds
/// zeros.
ResultSet exact_topt(const MatrixPair& pair, std::size_t t, bool exclude_diagonal,
                     unsigned threads = 1);

/// Fraction of the true top-t that approx recovers. The true set is expanded
/// by value ties at the cutoff: an approx pair whose |c| equals the t-th
/// exact |c| also counts. Requires exact.size() >= t.
double recall_against_exact(const ResultSet& approx, const ResultSet& exact, std::size_t t);

}  // namespace diamond
