#pragma once

#include <cstdint>

namespace vcmbench {

// splitmix64 (Steele, Lea, Flood). Public constants, so every
// implementation of the synthetic generator reproduces the same stream.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  // Top 53 bits as a double in [0, 1).
  double uniform();

  // floor(uniform() * n), n >= 1.
  std::uint64_t index(std::uint64_t n);

 private:
  std::uint64_t state_;
};

}  // namespace vcmbench
