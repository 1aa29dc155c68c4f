#pragma once

#include <cstdint>

namespace htts {

/// SplitMix64 (Steele, Lea, Flood 2014). The exact stream is part of the
/// generator's reproducibility contract, so the constants must not change.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t next() {
    state_ += kGamma;
    return mix(state_);
  }

  /// Uniform-ish draw in [0, bound) by plain modulo. The bias is below
  /// 2^-40 for every bound this project uses and keeps ports trivial.
  constexpr std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  constexpr std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace htts
