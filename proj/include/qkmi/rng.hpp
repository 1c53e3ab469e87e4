#pragma once

#include <cstdint>
#include <initializer_list>

namespace qkmi {

// splitmix64 step/finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Order-sensitive hash of a word sequence onto one 64-bit value.
// Used to derive per-variable and per-trial substream seeds; a pure
// function of its inputs, so derived streams never depend on execution
// order.
std::uint64_t stable_hash64(std::initializer_list<std::uint64_t> words);

// xoshiro256++ with splitmix64 seeding. Self-contained so that sampled
// streams are identical across compilers and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform double in [0, 1), 53-bit resolution.
  double uniform01();

 private:
  std::uint64_t s_[4];
};

}  // namespace qkmi
