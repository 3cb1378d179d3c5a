#include "alseg/rng.hpp"

#include <numeric>

#include "alseg/error.hpp"

namespace alseg {

std::uint64_t SplitMix64::below(std::uint64_t n) {
  if (n == 0) throw Error(Errc::invalid_argument, "below(0)");
  // 2^64 mod n, computed without 128-bit arithmetic.
  const std::uint64_t rem = (0 - n) % n;
  const std::uint64_t limit = 0 - rem;  // 2^64 - rem, wraps to 0 when rem == 0
  while (true) {
    const std::uint64_t r = next();
    if (rem == 0 || r < limit) return r % n;
  }
}

std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                    std::size_t k,
                                                    std::uint64_t seed) {
  if (k > n) {
    throw Error(Errc::invalid_argument,
                "cannot sample " + std::to_string(k) + " of " +
                    std::to_string(n) + " items");
  }
  std::vector<std::size_t> slots(n);
  std::iota(slots.begin(), slots.end(), std::size_t{0});
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(slots[i], slots[j]);
  }
  slots.resize(k);
  return slots;
}

}  // namespace alseg
