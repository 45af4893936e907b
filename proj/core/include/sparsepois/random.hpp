#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace sparsepois {

// Seed derivation
// ---------------
// Every random stream in the library is keyed by a tuple of integers, e.g.
// (seed, replication, column). The key is folded left to right with
//
//     derive_seed(k, i) = splitmix64_mix(k + 0x9E3779B97F4A7C15 * (i + 1))
//
// and the resulting 64-bit value seeds a xoshiro256** generator through the
// SplitMix64 sequence. Streams therefore depend only on their key, never on
// which thread draws them or in which order.

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t key,
                                    std::uint64_t index) noexcept {
  return splitmix64_mix(key + 0x9E3779B97F4A7C15ULL * (index + 1));
}

template <typename... Rest>
constexpr std::uint64_t derive_seed(std::uint64_t key, std::uint64_t index,
                                    Rest... rest) noexcept {
  return derive_seed(derive_seed(key, index), static_cast<std::uint64_t>(rest)...);
}

/// Stream purposes, mixed into keys so that unrelated draws sharing a
/// replication index never collide.
enum class StreamTag : std::uint64_t {
  Observation = 0x6f6273,
  Auxiliary = 0x617578,
  Prior = 0x707269,
  Packing = 0x706b67,
  Lemma = 0x6c6d61,
  Moment = 0x6d6f6d,
};

/// xoshiro256** 1.0 (Blackman & Vigna). Satisfies UniformRandomBitGenerator.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

 private:
  std::array<std::uint64_t, 4> state_{};
};

}  // namespace sparsepois
