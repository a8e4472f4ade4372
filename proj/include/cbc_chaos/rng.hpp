// Deterministic random source. std::mt19937_64 has a standard-mandated
// sequence, and the rejection sampler below avoids the implementation-defined
// std distributions, so a seed pins every draw bit-for-bit.
#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace cbc_chaos {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Extra words let callers derive independent sub-streams from one seed.
  Rng(std::uint64_t seed, std::initializer_list<std::uint32_t> salt) {
    std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed),
                                     static_cast<std::uint32_t>(seed >> 32)};
    words.insert(words.end(), salt.begin(), salt.end());
    std::seed_seq seq(words.begin(), words.end());
    engine_.seed(seq);
  }

  std::uint64_t next() { return engine_(); }

  // Uniform draw from [0, n) by rejection; n = 0 is a caller bug.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % n;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool coin() { return (engine_() & 1) != 0; }

private:
  std::mt19937_64 engine_;
};

}  // namespace cbc_chaos
