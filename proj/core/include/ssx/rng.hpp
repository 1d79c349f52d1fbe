#pragma once

#include <cstdint>
#include <random>

namespace ssx {

// splitmix64 step; used to derive independent engine seeds from (seed, index)
// so that sample i is identical no matter how samples are scheduled.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed ^ (0xd1b54a32d192ed03ull * (index + 1));
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  return std::mt19937_64(a ^ (b << 1));
}

}  // namespace ssx
