#pragma once

#include <cstdint>
#include <limits>

namespace mclab {

/// Counter-based generator: the i-th output is SplitMix64's finalizer applied to
/// key + i * golden-gamma. Any output can be computed without the ones before it,
/// so substreams keyed by (seed, grid index, run) are independent of scheduling.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0) noexcept : key_(key), counter_(counter) {}

  /// Key for substream `stream` of `parent`.
  static std::uint64_t derive(std::uint64_t parent, std::uint64_t stream) noexcept {
    return mix(parent ^ mix(stream + 0x632be59bd9b4e019ULL));
  }
  static std::uint64_t derive(std::uint64_t parent, std::uint64_t a, std::uint64_t b) noexcept {
    return derive(derive(parent, a), b);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return at(counter_++); }
  result_type at(std::uint64_t i) const noexcept { return mix(key_ + (i + 1) * kGamma); }

  /// Uniform on [0, 1) with 53 random bits; identical on every platform.
  double uniform() noexcept { return to_unit(operator()()); }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) noexcept { return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n; }

  static double to_unit(std::uint64_t bits) noexcept { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace mclab
