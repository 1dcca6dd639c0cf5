#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace avd {

// SplitMix64. Small, seedable and splittable; the same stream is trivial to
// reproduce in any language, which keeps seeded runs comparable across tools.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Independent child stream.
  SplitMix64 split() { return SplitMix64(next()); }

  // Uniform in [0, 1).
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform in [0, n).
  uint64_t below(uint64_t n) { return n ? next() % n : 0; }
};

// Fisher-Yates permutation of 0..n-1.
inline std::vector<int> random_permutation(int n, SplitMix64& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    int j = int(rng.below(uint64_t(i) + 1));
    std::swap(p[i], p[j]);
  }
  return p;
}

}  // namespace avd
