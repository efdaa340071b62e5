#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace elda {

// Stateless seed mixer (Sebastiano Vigna's splitmix64 step). Used to derive
// independent sub-seeds from one master seed so that parallel and serial
// execution see identical random streams.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t mix_seed(uint64_t a, uint64_t b) {
  return splitmix64(splitmix64(a) ^ (b + 0x9e3779b97f4a7c15ULL));
}

inline uint64_t mix_seed(uint64_t a, uint64_t b, uint64_t c) {
  return mix_seed(mix_seed(a, b), c);
}

// mt19937_64 plus hand-rolled distribution helpers. The standard engine is
// bit-exact across platforms; standard <random> distributions are not, so we
// avoid them anywhere reproducibility matters.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n).
  uint64_t below(uint64_t n) {
    // Multiply-shift; bias is < 2^-64 * n, irrelevant at our scales.
    return static_cast<uint64_t>((static_cast<unsigned __int128>(eng_()) * n) >> 64);
  }

  size_t index(size_t n) { return static_cast<size_t>(below(n)); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Exponential inter-arrival gap with the given rate (events per unit time).
  double exponential(double rate) {
    double u = uniform01();
    // uniform01 can return 0; nudge to keep log finite.
    if (u <= 0.0) u = 0x1.0p-53;
    return -std::log1p(-u) / rate;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace elda
