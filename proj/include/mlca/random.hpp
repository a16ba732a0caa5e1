#pragma once

#include <cstdint>
#include <limits>

namespace mlca {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based random stream. A stream is fully determined by its key
// (root seed, cell index, step index), so every cell of every step owns an
// independent substream regardless of the order cells are evaluated in.
// Satisfies UniformRandomBitGenerator.
class NoiseStream {
public:
  using result_type = std::uint64_t;

  explicit NoiseStream(std::uint64_t seed) noexcept : counter_(0), key_(mix64(seed + kGamma)) {}

  NoiseStream(std::uint64_t seed, std::uint64_t cell, std::uint64_t step) noexcept
      : counter_(0),
        key_(mix64(mix64(mix64(seed + kGamma) ^ (cell + kGamma)) ^ (step * kGamma + 1))) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return mix64(key_ + (++counter_) * kGamma); }

  std::uint64_t draws() const noexcept { return counter_; }

private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  std::uint64_t counter_;
  std::uint64_t key_;
};

}  // namespace mlca
