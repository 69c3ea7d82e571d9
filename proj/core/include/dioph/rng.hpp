#pragma once

#include <cstdint>

namespace dioph {

/// Counter-based uniform generator: the value for (seed, stream, draw) is a
/// pure function of those three integers, so samples can be produced in any
/// order or on any thread and still match bit for bit.
///
/// Keys are mixed with the SplitMix64 finalizer; the top 53 bits of the
/// result become a double in [0, 1).
class CounterRng {
 public:
  static constexpr const char* kAlgorithm = "splitmix64-counter/v1";

  explicit constexpr CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  constexpr std::uint64_t bits(std::uint64_t stream, std::uint64_t draw = 0) const noexcept {
    std::uint64_t z = mix(seed_ + 0x9e3779b97f4a7c15ULL * (stream + 1));
    z = mix(z ^ (0xd1b54a32d192ed03ULL * (draw + 1)));
    return z;
  }

  constexpr double uniform(std::uint64_t stream, std::uint64_t draw = 0) const noexcept {
    return static_cast<double>(bits(stream, draw) >> 11) * 0x1.0p-53;
  }

  constexpr std::uint64_t seed() const noexcept { return seed_; }

 private:
  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
};

}  // namespace dioph
