#pragma once

#include <cstdint>

namespace cantor {

// splitmix64; self-contained so verify suites emit identical streams on every
// platform (std::uniform_int_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform-ish in [0, n); modulo bias is irrelevant for property sweeps
  uint64_t below(uint64_t n) { return n ? next() % n : 0; }

  // inclusive range
  uint64_t between(uint64_t lo, uint64_t hi) { return lo + below(hi - lo + 1); }

  bool coin() { return (next() & 1) != 0; }

 private:
  uint64_t state_;
};

}  // namespace cantor
