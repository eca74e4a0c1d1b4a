#pragma once

#include <cassert>
#include <cstdint>

namespace netpriv {

// SplitMix64 finalizer (Steele/Lea/Flood). Used both as the mixing step of
// the generator below and for O(1) derivation of independent sub-stream
// seeds, so parallel trial workers never share generator state.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t kGolden64 = 0x9E3779B97F4A7C15ULL;

/// Seed for logical sub-stream `stream` of a master seed. Identical on every
/// platform; stream indices must not be reused within one master seed.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  return splitmix64_mix(master + (stream + 1) * kGolden64);
}

// Deterministic, platform-independent generator. std::uniform_int_distribution
// is not bit-stable across standard libraries, so bounded draws are done with
// masked rejection here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next_u64() noexcept {
    state_ += kGolden64;
    return splitmix64_mix(state_);
  }

  /// Unbiased integer in [0, n). n must be positive.
  std::uint32_t uniform_below(std::uint32_t n) noexcept {
    assert(n > 0);
    if (n == 1) return 0;
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    for (;;) {
      const std::uint64_t r = next_u64() & mask;
      if (r < n) return static_cast<std::uint32_t>(r);
    }
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) noexcept { return uniform01() < p; }

 private:
  std::uint64_t state_;
};

// Sub-stream tags. Trial/session indices are added to the *_base tags, so
// the bases are spaced far apart.
namespace stream {
inline constexpr std::uint64_t population = 1;
inline constexpr std::uint64_t alice_draw = 2;
inline constexpr std::uint64_t session_key = 3;
inline constexpr std::uint64_t persistent_members = 4;
inline constexpr std::uint64_t persistent_exits = 5;
inline constexpr std::uint64_t trial_base = std::uint64_t{1} << 32;
inline constexpr std::uint64_t session_base = std::uint64_t{1} << 33;
inline constexpr std::uint64_t seed_list_base = std::uint64_t{1} << 34;
}  // namespace stream

/// 64-bit FNV-1a. Stable content fingerprint for token payloads.
constexpr std::uint64_t fnv1a64(const char* data, std::size_t len) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= static_cast<unsigned char>(data[i]);
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace netpriv
