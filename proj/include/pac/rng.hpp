#pragma once

// Seed derivation. Every random stream in the engine (per agent, per trial,
// per scheduler, per gossip run) is a std::mt19937_64 seeded from the master
// seed through derive_seed, so streams never depend on event order.

#include <cstdint>
#include <random>

namespace pac {

using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

enum class Stream : std::uint64_t {
  Agent = 0x41,
  Scheduler = 0x53,
  Gossip = 0x47,
  Trial = 0x54,
  BatchA = 0x61,
  BatchB = 0x62,
  Projection = 0x50,
  Resample = 0x52,
};

constexpr std::uint64_t derive_seed(std::uint64_t master, Stream stream, std::uint64_t index = 0) {
  return splitmix64(master ^ splitmix64(static_cast<std::uint64_t>(stream) ^ splitmix64(index)));
}

inline Engine make_engine(std::uint64_t master, Stream stream, std::uint64_t index = 0) {
  return Engine(derive_seed(master, stream, index));
}

// Uniform double in [0,1) from the top 53 bits.
inline double unit_double(Engine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound) by rejection; std::uniform_int_distribution
// is not reproducible across standard libraries.
inline std::uint64_t uniform_below(Engine& rng, std::uint64_t bound) {
  std::uint64_t limit = bound == 0 ? 0 : (0 - bound) % bound;
  for (;;) {
    std::uint64_t x = rng();
    if (x >= limit) return x % bound;
  }
}

}  // namespace pac
