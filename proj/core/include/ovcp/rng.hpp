#pragma once

#include <cmath>
#include <cstdint>

namespace ovcp::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

/// splitmix64 finalizer: a 64-bit bijection with full avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based draw: a pure function of the key tuple. Equal tuples give
/// equal values under any evaluation order or thread schedule, which is what
/// makes instance generation reproducible under parallelism.
constexpr std::uint64_t draw(std::uint64_t seed, std::uint64_t stream,
                             std::uint64_t index, std::uint64_t counter) {
  std::uint64_t h = mix64(seed + kGolden);
  h = mix64(h ^ (stream + kGolden));
  h = mix64(h ^ (index + kGolden));
  h = mix64(h ^ (counter + kGolden));
  return h;
}

/// Streams keyed off the instance seed. Sides X/Y feed coordinate draws;
/// the rest seed auxiliary sampling so they never collide with generation.
enum Stream : std::uint64_t {
  kSideX = 0,
  kSideY = 1,
  kSubsampleX = 2,
  kSubsampleY = 3,
  kEventSample = 4,
};

/// floor(p * 2^64) for p in (0,1). A uniform 64-bit draw below this value is
/// a Bernoulli(p) success with bias below 2^-64.
inline std::uint64_t bernoulli_threshold(double p) {
  long double scaled = std::ldexp(static_cast<long double>(p), 64);
  return static_cast<std::uint64_t>(scaled);
}

}  // namespace ovcp::rng
