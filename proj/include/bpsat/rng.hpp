#pragma once

#include <cassert>
#include <cstdint>

namespace bpsat {

// Deterministic splittable generator (splitmix64 finalizer). All randomness in
// the library flows through this so runs reproduce bit-for-bit across
// platforms and thread counts.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // uniform in [lo, hi)
  double next_double(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // unbiased uniform integer in [0, n)
  std::uint64_t next_below(std::uint64_t n) {
    assert(n > 0);
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  bool next_bool() { return (next() & 1ull) != 0; }

private:
  std::uint64_t state_;
};

// Counter-based seed derivation: child stream k of a master seed is the same
// no matter when or on which thread it is drawn.
inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream) {
  SplitMix64 g(master ^ (0x2545f4914f6cdd1dull * (stream + 1)));
  return g.next();
}

}  // namespace bpsat
