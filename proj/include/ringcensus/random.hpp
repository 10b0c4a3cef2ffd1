#pragma once

#include <random>

#include "ringcensus/ring.hpp"

namespace ringcensus {

/// mt19937_64 with a bias-free bounded draw whose output is identical on
/// every standard library (std::uniform_int_distribution is not).
class SeededRng {
 public:
  explicit SeededRng(u64 seed) : engine_(seed) {}

  /// Uniform in [0, bound); bound >= 1.
  u64 below(u64 bound) {
    const u64 limit = UINT64_MAX - UINT64_MAX % bound;
    u64 x;
    do x = engine_();
    while (x >= limit);
    return x % bound;
  }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ringcensus
