#pragma once

#include <cstdint>

namespace equilab {

// splitmix64 finalizer (Steele, Lea & Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based stream: the k-th draw is a pure function of
/// (root seed, stream id, k), so replicas and coordinates can be evaluated in
/// any order or on any thread and still agree bit for bit.
class CounterStream {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  constexpr CounterStream(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(mix64(seed ^ mix64(stream * kGamma + 0x632BE59BD9B4E019ULL))) {}

  constexpr std::uint64_t bits(std::uint64_t index) const noexcept {
    return mix64(key_ + (index + 1) * kGamma);
  }

  /// Uniform on [0, 1) with 53 random bits.
  constexpr double uniform(std::uint64_t index) const noexcept {
    return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
  }

  /// Uniform on the open interval (0, 1); safe to feed to a quantile.
  constexpr double open_uniform(std::uint64_t index) const noexcept {
    return (static_cast<double>(bits(index) >> 11) + 0.5) * 0x1.0p-53;
  }

  constexpr std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
};

/// Seed for replica `r` of an experiment rooted at `root`.
constexpr std::uint64_t replica_seed(std::uint64_t root, std::uint64_t replica) noexcept {
  return CounterStream(root, 0xA5A5A5A5ULL).bits(replica);
}

}  // namespace equilab
