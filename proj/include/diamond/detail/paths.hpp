#pragma once

#include <cstddef>
#include <vector>

#include "diamond/errors.hpp"

namespace diamond::detail {

struct ThreePath {
  Index k = 0;
  Index i = 0;
  Index j = 0;
  Index kp = 0;
  double sign = 1.0;
};

inline double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

// Stable counting sort of items by an integer key in [0, buckets); O(s + buckets).
template <typename T, typename KeyFn>
void counting_sort(std::vector<T>& items, std::vector<T>& scratch, std::size_t buckets,
                   KeyFn key) {
  std::vector<std::size_t> start(buckets + 1, 0);
  for (const auto& it : items) ++start[key(it) + 1];
  for (std::size_t b = 0; b < buckets; ++b) start[b + 1] += start[b];
  scratch.resize(items.size());
  for (const auto& it : items) scratch[start[key(it)]++] = it;
  items.swap(scratch);
}

}  // namespace diamond::detail
