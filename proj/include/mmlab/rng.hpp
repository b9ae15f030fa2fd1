#pragma once

#include <cstdint>
#include <random>

namespace mmlab {

using Rng = std::mt19937_64;

/// splitmix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of replica `index` under `root`: a counter-based split, so replica
/// streams do not depend on how many replicas run or in which order.
constexpr std::uint64_t replica_seed(std::uint64_t root, std::uint64_t index) {
  return mix64(mix64(root) ^ (index * 0xd1b54a32d192ed03ULL + 1));
}

inline Rng replica_rng(std::uint64_t root, std::uint64_t index) { return Rng(replica_seed(root, index)); }

}  // namespace mmlab
