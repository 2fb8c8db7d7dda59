#pragma once
// Deterministic randomness: the mt19937_64 engine is fully specified by the
// C++ standard, so seeded streams are reproducible across platforms.  The
// standard *distributions* are not specified, hence the modulo helpers.

#include <cstdint>
#include <random>

namespace cgkw {

class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next() { return gen_(); }

  // Uniform-ish integer in [0, n); modulo bias is irrelevant for test
  // sampling and keeps the stream platform-stable.
  int64_t below(int64_t n) { return static_cast<int64_t>(next() % static_cast<uint64_t>(n)); }

  // Integer in [lo, hi].
  int between(int lo, int hi) { return lo + static_cast<int>(below(hi - lo + 1)); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace cgkw
