#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "diamond/accumulator.hpp"
#include "diamond/sparse_matrix.hpp"

namespace diamond {

/// Center-edge weights w_ki = |a_ki| ‖A_{:i}‖₁ ‖B_{k:}‖₁ on the pattern of A.
///
/// entries[p] belongs to A's p-th compressed-row entry, so walking the table
/// in storage order visits centers in nondecreasing k.
struct WeightTable {
  std::vector<double> entries;
  double total = 0.0;  ///< ‖W‖₁
};

/// O(nnz(A)). Throws InfeasibleSampling when ‖W‖₁ = 0.
WeightTable build_weights(const MatrixPair& pair);

/// Per-line normalized cumulative sums over one compressed layout, used to
/// draw an entry of a row (or column) with probability |v| / line norm.
class LineCumulative {
 public:
  LineCumulative() = default;
  LineCumulative(std::span<const std::size_t> ptr, std::span<const double> vals);

  /// Absolute entry position in the layout for a variate u in (0, 1].
  /// The line must be nonempty.
  std::size_t draw(Index line, double u) const;

 private:
  std::span<const std::size_t> ptr_;
  std::vector<double> cum_;
};

/// Uniform entry of a line: used by the binary variant in place of a search.
inline std::size_t draw_uniform(std::span<const std::size_t> ptr, Index line, double u) {
  const std::size_t deg = ptr[line + 1] - ptr[line];
  auto off = static_cast<std::size_t>(u * static_cast<double>(deg));
  if (off >= deg) off = deg - 1;
  return ptr[line] + off;
}

/// Holds the preprocessed structures for repeated diamond sampling runs over
/// one pair: the weight table W, Â (normalized cumulative columns of A) and
/// B̂ (normalized cumulative rows of B). Immutable after construction, so
/// concurrent runs may share it.
class DiamondSampler {
 public:
  explicit DiamondSampler(const MatrixPair& pair, Variant variant = Variant::Auto);
  DiamondSampler(const MatrixPair& pair, WeightTable weights, Variant variant = Variant::Auto);

  const MatrixPair& pair() const { return pair_; }
  const WeightTable& weights() const { return weights_; }
  ResolvedVariant resolved() const { return resolved_; }

  /// Locality-optimized four-phase run: center edges by sorted merge (arrive
  /// sorted by k), right endpoints j by search in rows of B̂, counting sort by
  /// i, left endpoints k' by search in columns of Â, counting sort by k',
  /// then closure lookups b_{k'j} and accumulation. Gram and
  /// symmetric-square shapes are symmetrized before returning.
  SampleAccumulator sample(const SamplingPlan& plan) const;

  /// Straightforward per-sample loop drawing from the same distributions;
  /// the reference the optimized pipeline is checked and timed against.
  SampleAccumulator sample_direct(const SamplingPlan& plan) const;

 private:
  void prepare();

  MatrixPair pair_;
  WeightTable weights_;
  ResolvedVariant resolved_;
  LineCumulative a_cols_;  // Â over A's compressed-column layout
  LineCumulative b_rows_;  // B̂ over B's compressed-row layout
};

/// Convenience wrapper: build the sampler and run the optimized pipeline.
SampleAccumulator sample_diamonds(const MatrixPair& pair, const WeightTable& weights,
                                  const SamplingPlan& plan);

/// c_ij² / ‖W‖₁, the expected per-sample increment of x_ij.
double expected_estimate(const MatrixPair& pair, const WeightTable& weights, Index i, Index j);

}  // namespace diamond
