#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace molinfer::util {

// Deterministic RNG wrapper. The standard distributions are
// implementation-defined, so uniform/normal are derived from raw
// mt19937_64 output directly; outputs are bit-stable across platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  // Derives an independent stream for (seed, a, b); used for per-fold
  // and per-repeat trainers.
  static Rng stream(uint64_t seed, uint64_t a, uint64_t b) {
    uint64_t x = seed;
    x = mix(x ^ (a + 0x9e3779b97f4a7c15ULL));
    x = mix(x ^ (b + 0xbf58476d1ce4e5b9ULL));
    return Rng(x);
  }

  uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n).
  uint64_t below(uint64_t n) { return next_u64() % n; }

  int range(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  double normal() {
    // Box-Muller; one value per call keeps the stream simple.
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  static uint64_t mix(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 eng_;
};

}  // namespace molinfer::util
