#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "diamond/errors.hpp"

namespace diamond {

struct RankedPair {
  Index i = 0;
  Index j = 0;
  double exact = 0.0;    ///< c_ij
  double sampler = 0.0;  ///< x_ij (0 for exact results)
};

/// Total order used for every ranking: larger |score| first, then i, then j.
inline bool ranks_before(double score_a, Index ia, Index ja, double score_b, Index ib,
                         Index jb) {
  const double fa = std::fabs(score_a), fb = std::fabs(score_b);
  if (fa != fb) return fa > fb;
  if (ia != ib) return ia < ib;
  return ja < jb;
}

struct PhaseTimes {
  double preprocess = 0.0;
  double sample = 0.0;
  double postprocess = 0.0;
};

/// Ranked (i, j, c_ij, x_ij) answer plus run metadata.
struct ResultSet {
  std::vector<RankedPair> entries;
  std::size_t requested_t = 0;
  /// Fewer admissible pairs (or candidates) existed than requested.
  bool fewer_than_requested = false;
  /// Fewer than t entries have a nonzero exact value.
  bool fewer_nonzero = false;
  /// The accumulator was empty, so nothing could be ranked.
  bool empty_input = false;

  std::uint64_t s = 0;
  std::size_t t_prime = 0;
  std::uint64_t seed = 0;
  std::string variant;
  PhaseTimes times;

  std::size_t size() const { return entries.size(); }
};

}  // namespace diamond
