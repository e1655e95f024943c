#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "diamond/rng.hpp"

namespace diamond {

/// Unnormalized discrete distribution over {0, ..., p-1}.
class DiscreteDistribution {
 public:
  /// Throws InputError for negative or non-finite weights and
  /// InfeasibleSampling when every weight is zero.
  explicit DiscreteDistribution(std::vector<double> weights);

  std::span<const double> weights() const { return weights_; }
  double total() const { return total_; }
  std::size_t size() const { return weights_.size(); }
  /// Index of the last positive weight.
  std::size_t last_support() const { return last_support_; }

  /// Prefix sums with every entry from last_support() on forced to total().
  std::vector<double> cumulative() const;

 private:
  std::vector<double> weights_;
  double total_ = 0.0;
  std::size_t last_support_ = 0;
};

enum class Scheme { BinarySearch, SortedMerge };

/// Sorted merge when s < p, binary search otherwise (ties go to binary search).
Scheme choose_scheme(std::size_t s, std::size_t p);

/// First k with cumulative[k] >= r, i.e. cumulative[k-1] < r <= cumulative[k].
/// Requires r in (0, cumulative.back()].
inline std::size_t locate(std::span<const double> cumulative, double r);

/// Output of a batch draw: either a count per index (binary search) or an
/// explicit nondecreasing index list (sorted merge).
struct SampleDraws {
  Scheme scheme = Scheme::BinarySearch;
  std::vector<std::uint64_t> counts;
  std::vector<std::size_t> explicit_list;

  std::vector<std::uint64_t> as_counts(std::size_t p) const;
  /// Nondecreasing index list; expands counts when needed.
  std::vector<std::size_t> as_sorted_list() const;
};

/// s independent draws by binary search on the cumulative sums; O(s log p).
std::vector<std::uint64_t> sample_by_binary_search(const DiscreteDistribution& dist,
                                                   std::size_t s, RngStream& rng);

/// s independent draws by sorting s variates and merging them once against
/// the running prefix sum of the weights; O(s log s + p) with contiguous
/// access and no stored cumulative vector. Output is nondecreasing.
std::vector<std::size_t> sample_by_sorted_merge(const DiscreteDistribution& dist,
                                                std::size_t s, RngStream& rng);

/// The merge step alone: sorted_variates must be nondecreasing and lie in
/// (0, Σ weights]. Indices with zero weight are never returned.
std::vector<std::size_t> merge_sorted_variates(std::span<const double> weights,
                                               std::span<const double> sorted_variates);

/// Prefix sums of weights with every entry from the last positive weight on
/// forced to total, so r = total always lands on a reachable index.
std::vector<double> clamped_prefix_sums(std::span<const double> weights, double total);

/// s draws from unnormalized weights (Σ = total) returned as a nondecreasing
/// index list, using the scheme picked by choose_scheme(s, weights.size()).
std::vector<std::size_t> sample_sorted_indices(std::span<const double> weights, double total,
                                               std::size_t s, RngStream& rng);

/// Draws with the scheme picked by choose_scheme(s, p).
SampleDraws sample(const DiscreteDistribution& dist, std::size_t s, RngStream& rng);
SampleDraws sample(const DiscreteDistribution& dist, std::size_t s, RngStream& rng,
                   Scheme scheme);

inline std::size_t locate(std::span<const double> cumulative, double r) {
  std::size_t lo = 0, hi = cumulative.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (cumulative[mid] < r) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace diamond
