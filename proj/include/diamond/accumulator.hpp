#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "diamond/sparse_matrix.hpp"

namespace diamond {

enum class Variant { Auto, General, Binary, Nonnegative, Gram, SymmetricSquare };

std::string_view to_string(Variant v);
/// Accepts the CLI spellings (auto, general, binary, nonnegative, gram,
/// symmetric-square). Throws InputError otherwise.
Variant parse_variant(std::string_view name);

/// How increments are computed.
enum class ValueKind { Signed, Nonnegative, Binary };
/// Which structural shortcut applies.
enum class Shape { Plain, Gram, SymmetricSquare };

struct ResolvedVariant {
  ValueKind values = ValueKind::Signed;
  Shape shape = Shape::Plain;
};

/// Value kind is detected from the input flags unless the variant names one;
/// shape follows the pair (Gram when B aliases A) except that the
/// symmetric-square split is used only for Auto or when requested.
/// Throws InputError when the requested variant does not fit the pair.
ResolvedVariant resolve_variant(Variant v, const MatrixPair& pair);

struct SamplingPlan {
  std::uint64_t s = 1;
  std::size_t t = 1;
  std::size_t t_prime = 1;  ///< dot-product budget, t' >= t
  std::uint64_t seed = 0;
  /// Separates independent runs sharing a seed (query index, repetition).
  std::uint64_t run = 0;
  Variant variant = Variant::Auto;
  bool exclude_diagonal = false;

  /// Throws InputError unless s >= 1 and 1 <= t <= t'.
  void validate() const;
};

struct Cell {
  Index i;
  Index j;
  double x;
};

/// Sparse estimate matrix X plus path counters.
class SampleAccumulator {
 public:
  SampleAccumulator() = default;
  SampleAccumulator(Index m, Index n, std::size_t expected_cells);

  Index m() const { return m_; }
  Index n() const { return n_; }

  void add(Index i, Index j, double v) { cells_[key(i, j)] += v; }
  double at(Index i, Index j) const;

  /// Nonzero cells in (i, j) order.
  std::vector<Cell> cells() const;
  /// |Ω_s|: number of nonzero cells.
  std::size_t support_size() const;
  /// Σ x_ij and Σ |x_ij| over all cells.
  double sum() const;
  double abs_sum() const;

  /// X <- (X + Xᵀ)/2. Requires m == n.
  void symmetrize();

  std::uint64_t paths_drawn = 0;
  std::uint64_t diamonds_closed = 0;

 private:
  std::uint64_t key(Index i, Index j) const { return std::uint64_t{i} * n_ + j; }

  Index m_ = 0;
  Index n_ = 0;
  std::unordered_map<std::uint64_t, double> cells_;
};

/// diamonds_closed / paths_drawn; 0 when nothing was drawn.
double closure_rate(const SampleAccumulator& acc);

}  // namespace diamond
