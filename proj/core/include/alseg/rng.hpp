#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace alseg {

/// SplitMix64 (Steele, Lea & Flood; constants from Vigna's reference
/// implementation). Every random decision in the toolkit flows from one of
/// these, seeded from configuration, so selections reproduce bit-for-bit
/// in any language that implements the same three steps.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, n) by rejection: draws r until
  /// r < 2^64 - (2^64 mod n), then returns r mod n. n must be >= 1.
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t state_;
};

/// First `k` entries of a partial Fisher-Yates shuffle of 0..n-1: for
/// i in [0, k), swap slot i with slot i + below(n - i).
std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                    std::size_t k,
                                                    std::uint64_t seed);

}  // namespace alseg
