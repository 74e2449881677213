#pragma once

#include <cstdint>
#include <random>

namespace rbminit {

using Rng = std::mt19937_64;

/**
 * Independent generator for sub-stream `stream` of an experiment seed.
 * The engine is seeded through std::seed_seq with the 32-bit halves of
 * (seed, stream), so chain k of seed s always gets the same sequence
 * regardless of how many other chains exist.
 */
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

}  // namespace rbminit
