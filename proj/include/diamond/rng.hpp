#pragma once

#include <cstdint>
#include <limits>

namespace diamond {

/// Phase labels for independent random streams.
enum class StreamId : std::uint64_t {
  Center = 1,  ///< center edge / center row draws
  Right = 2,   ///< B-side endpoint draws
  Left = 3,    ///< A-side endpoint draws
  Aux = 4,
};

/// Counter-based 64-bit generator keyed by (seed, stream, run).
///
/// The n-th output is a SplitMix64 finalizer applied to key + n * φ, so a
/// stream's sequence depends only on its key and how many values have been
/// consumed from it, never on other streams. Satisfies
/// UniformRandomBitGenerator.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, StreamId stream, std::uint64_t run = 0)
      : key_(mix(seed ^ mix(static_cast<std::uint64_t>(stream) ^ mix(run + kGolden)))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + (++counter_) * kGolden); }

  /// Uniform on (0, 1] with 53 random bits.
  double uniform() { return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53; }

  std::uint64_t consumed() const { return counter_; }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace diamond
