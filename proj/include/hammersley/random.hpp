#pragma once

#include <cstdint>
#include <random>

namespace hammersley {

/// 64-bit finalizer from SplitMix64 (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Identifies one reproducible random sequence.
///
/// The engine seed is `splitmix64(seed ^ splitmix64(stream_id))`, fed to
/// `std::mt19937_64`, whose output sequence is fixed by the C++ standard.
/// Uniform variates take the top 53 bits of each engine output, so a given
/// (seed, stream_id) pair yields the same doubles on every conforming
/// platform.
struct UnitStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  /// Derived stream for an independent sub-task of this one.
  [[nodiscard]] UnitStream child(std::uint64_t k) const noexcept {
    return {seed, splitmix64(stream_id ^ splitmix64(~k))};
  }

  friend bool operator==(const UnitStream&, const UnitStream&) = default;
};

class RandomStream {
 public:
  explicit RandomStream(const UnitStream& key)
      : key_(key), engine_(splitmix64(key.seed ^ splitmix64(key.stream_id))) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Exponential with the given rate (> 0).
  double exponential(double rate);

  bool bernoulli(double p) { return uniform() < p; }

  const UnitStream& key() const noexcept { return key_; }

 private:
  UnitStream key_;
  std::mt19937_64 engine_;
};

}  // namespace hammersley
