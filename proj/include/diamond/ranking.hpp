#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "diamond/accumulator.hpp"
#include "diamond/diamond.hpp"
#include "diamond/result.hpp"
#include "diamond/sparse_matrix.hpp"

namespace diamond {

/// Candidate selection and exact rescoring.
///
/// Takes the t' cells of largest |x_ij| (ties by i, then j), computes c_ij for
/// each with column_dot at O(t' d), and keeps the best t by |c_ij|. For Gram
/// pairs with exclude_diagonal only cells with i < j are candidates. An empty
/// accumulator yields an empty result with empty_input set.
ResultSet postprocess(const SampleAccumulator& acc, const MatrixPair& pair,
                      const SamplingPlan& plan);

/// Inputs to the sample-size bounds; valid for nonnegative A and B with
/// entries at most K.
struct ConcentrationQuery {
  double K = 1.0;
  double epsilon = 0.5;  ///< relative error, (0, 1]
  double delta = 0.1;    ///< failure probability, (0, 1)
  double tau = 1.0;      ///< separation threshold
  double c = 1.0;        ///< target dot-product magnitude

  /// Throws InputError unless every field is positive, epsilon <= 1, delta < 1.
  void validate() const;
};

/// ceil(3 K ‖W‖₁ ln(2/δ) / (ε² c²)): samples after which x_ij ‖W‖₁ / s is
/// within a factor (1 ± ε) of c_ij² with probability at least 1 - δ.
std::uint64_t samples_for_entry(const ConcentrationQuery& q, double w_total);

/// ceil(12 K ‖W‖₁ ln(2mn/δ) / τ²), at least 1: with probability 1 - δ every
/// pair with c_ij > τ then scores above every pair with c_i'j' < τ/4.
std::uint64_t samples_for_separation(const ConcentrationQuery& q, double w_total,
                                     std::uint64_t m, std::uint64_t n);

/// ‖W‖₁ / max c², the predicted sample count to surface the largest entry.
double estimated_samples(double w_total, double max_abs_c);

struct DatasetDiagnostics {
  double max_abs_c = 0.0;
  double w_total = 0.0;
  double est_samples = 0.0;
  std::optional<double> closure_rate;
};

/// Summary statistics for a dataset; exact_top must be nonempty. closure is
/// the measured closure rate of a sampling run, when one was made.
DatasetDiagnostics dataset_diagnostics(const MatrixPair& pair, const WeightTable& weights,
                                       const ResultSet& exact_top,
                                       std::optional<double> closure = std::nullopt);

}  // namespace diamond
