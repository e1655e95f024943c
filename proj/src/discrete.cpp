#include "diamond/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "diamond/errors.hpp"

namespace diamond {

DiscreteDistribution::DiscreteDistribution(std::vector<double> weights)
    : weights_(std::move(weights)) {
  long double total = 0.0L;
  bool any = false;
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    const double w = weights_[k];
    if (!std::isfinite(w) || w < 0.0) throw InputError("weights must be finite and nonnegative");
    if (w > 0.0) {
      any = true;
      last_support_ = k;
    }
    total += w;
  }
  if (!any) throw InfeasibleSampling("all-zero distribution");
  total_ = static_cast<double>(total);
}

std::vector<double> DiscreteDistribution::cumulative() const {
  return clamped_prefix_sums(weights_, total_);
}

std::vector<double> clamped_prefix_sums(std::span<const double> weights, double total) {
  std::size_t last = weights.size();
  while (last > 0 && weights[last - 1] == 0.0) --last;
  if (last == 0) throw InfeasibleSampling("all-zero distribution");
  --last;
  std::vector<double> cum(weights.size());
  long double run = 0.0L;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    run += weights[k];
    cum[k] = k >= last ? total : std::min(static_cast<double>(run), total);
  }
  return cum;
}

Scheme choose_scheme(std::size_t s, std::size_t p) {
  return s < p ? Scheme::SortedMerge : Scheme::BinarySearch;
}

std::vector<std::uint64_t> SampleDraws::as_counts(std::size_t p) const {
  if (scheme == Scheme::BinarySearch) return counts;
  std::vector<std::uint64_t> c(p, 0);
  for (std::size_t e : explicit_list) ++c[e];
  return c;
}

std::vector<std::size_t> SampleDraws::as_sorted_list() const {
  if (scheme == Scheme::SortedMerge) return explicit_list;
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < counts.size(); ++k) out.insert(out.end(), counts[k], k);
  return out;
}

std::vector<std::uint64_t> sample_by_binary_search(const DiscreteDistribution& dist,
                                                   std::size_t s, RngStream& rng) {
  const auto cum = dist.cumulative();
  std::vector<std::uint64_t> counts(dist.size(), 0);
  const double total = dist.total();
  for (std::size_t l = 0; l < s; ++l) {
    // u in (0,1] keeps r in (0,total]; the product can round to 0 only for
    // subnormal totals.
    const double r = std::max(rng.uniform() * total, std::numeric_limits<double>::min());
    ++counts[locate(cum, r)];
  }
  return counts;
}

std::vector<std::size_t> merge_sorted_variates(std::span<const double> weights,
                                               std::span<const double> sorted_variates) {
  std::vector<std::size_t> out(sorted_variates.size());
  if (sorted_variates.empty()) return out;
  std::size_t last = weights.size();
  while (last > 0 && weights[last - 1] == 0.0) --last;
  if (last == 0) throw InfeasibleSampling("all-zero distribution");
  --last;

  std::size_t k = 0;
  long double running = weights[0];
  for (std::size_t l = 0; l < sorted_variates.size(); ++l) {
    const long double r = sorted_variates[l];
    while (k < last && (r > running || weights[k] == 0.0)) running += weights[++k];
    out[l] = k;
  }
  return out;
}

std::vector<std::size_t> sample_by_sorted_merge(const DiscreteDistribution& dist,
                                                std::size_t s, RngStream& rng) {
  std::vector<double> r(s);
  const double total = dist.total();
  for (auto& v : r) v = std::max(rng.uniform() * total, std::numeric_limits<double>::min());
  std::sort(r.begin(), r.end());
  return merge_sorted_variates(dist.weights(), r);
}

std::vector<std::size_t> sample_sorted_indices(std::span<const double> weights, double total,
                                               std::size_t s, RngStream& rng) {
  if (choose_scheme(s, weights.size()) == Scheme::SortedMerge) {
    std::vector<double> r(s);
    for (auto& v : r) v = std::max(rng.uniform() * total, std::numeric_limits<double>::min());
    std::sort(r.begin(), r.end());
    return merge_sorted_variates(weights, r);
  }
  const auto cum = clamped_prefix_sums(weights, total);
  std::vector<std::uint64_t> counts(weights.size(), 0);
  for (std::size_t l = 0; l < s; ++l) {
    const double r = std::max(rng.uniform() * total, std::numeric_limits<double>::min());
    ++counts[locate(cum, r)];
  }
  std::vector<std::size_t> out;
  out.reserve(s);
  for (std::size_t k = 0; k < counts.size(); ++k) out.insert(out.end(), counts[k], k);
  return out;
}

SampleDraws sample(const DiscreteDistribution& dist, std::size_t s, RngStream& rng) {
  return sample(dist, s, rng, choose_scheme(s, dist.size()));
}

SampleDraws sample(const DiscreteDistribution& dist, std::size_t s, RngStream& rng,
                   Scheme scheme) {
  SampleDraws out;
  out.scheme = scheme;
  if (scheme == Scheme::BinarySearch) {
    out.counts = sample_by_binary_search(dist, s, rng);
  } else {
    out.explicit_list = sample_by_sorted_merge(dist, s, rng);
  }
  return out;
}

}  // namespace diamond
