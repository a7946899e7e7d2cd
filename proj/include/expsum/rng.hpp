#pragma once

#include <cstdint>
#include <random>

namespace expsum {

// Seed mixing used everywhere a sub-seed is derived from a base seed and a
// stream index, so that parallel evaluations stay reproducible regardless of
// scheduling.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(base ^ splitmix64(stream + 0x123456789abcdefULL));
}

// Uniform double in [0,1) from the top 53 bits; avoids the
// implementation-defined behavior of std::uniform_real_distribution so that
// seeded runs are identical across standard libraries.
inline double canonical_double(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace expsum
