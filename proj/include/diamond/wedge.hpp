#pragma once

#include <vector>

#include "diamond/accumulator.hpp"
#include "diamond/diamond.hpp"
#include "diamond/sparse_matrix.hpp"

namespace diamond {

/// Center weights w_k = ‖A_{k:}‖₁ ‖B_{k:}‖₁ over the shared dimension.
struct WedgeWeightVector {
  std::vector<double> weights;
  double total = 0.0;  ///< ‖w‖₁
};

/// O(d). Throws InfeasibleSampling when ‖w‖₁ = 0.
WedgeWeightVector build_wedge_weights(const MatrixPair& pair);

/// Wedge-sampling baseline with the same locality discipline as the diamond
/// pipeline: centers k arrive sorted, then both endpoints come from
/// contiguous rows of A and B. Every wedge contributes sgn(a_ki b_kj), so
/// E[x_ij / s] = c_ij / ‖w‖₁.
class WedgeSampler {
 public:
  explicit WedgeSampler(const MatrixPair& pair, Variant variant = Variant::Auto);

  const WedgeWeightVector& weights() const { return weights_; }
  ResolvedVariant resolved() const { return resolved_; }

  SampleAccumulator sample(const SamplingPlan& plan) const;

 private:
  MatrixPair pair_;
  WedgeWeightVector weights_;
  ResolvedVariant resolved_;
  LineCumulative a_rows_;
  LineCumulative b_rows_;
};

SampleAccumulator sample_wedges(const MatrixPair& pair, const SamplingPlan& plan);

}  // namespace diamond
