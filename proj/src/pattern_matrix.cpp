#include "elda/pattern_matrix.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <string>

#include "elda/errors.hpp"
#include "elda/rng.hpp"

namespace elda {

uint64_t factorial_capped(uint32_t m) {
  uint64_t f = 1;
  for (uint32_t i = 2; i <= m; ++i) {
    if (f > (1ULL << 63) / i) return 1ULL << 63;
    f *= i;
  }
  return f;
}

PatternMatrix PatternMatrix::generate(uint32_t m, uint32_t n, uint64_t seed) {
  if (m == 0 || m > 32) throw ConfigError("substring count must be in [1, 32]");
  if (n == 0) throw ConfigError("pattern count must be positive");
  if (static_cast<uint64_t>(n) > factorial_capped(m)) {
    throw ConfigError("pattern count " + std::to_string(n) + " exceeds " +
                      std::to_string(m) + "! distinct permutations");
  }

  PatternMatrix pm;
  pm.m_ = m;
  pm.n_ = n;
  pm.rows_.reserve(static_cast<size_t>(n) * m);

  Rng rng(mix_seed(seed, 0x7061747465726e73ULL));  // "patterns"
  std::vector<uint8_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::set<std::vector<uint8_t>> seen;
  while (seen.size() < n) {
    for (uint32_t i = m - 1; i > 0; --i) {
      uint32_t j = static_cast<uint32_t>(rng.below(i + 1));
      std::swap(perm[i], perm[j]);
    }
    if (seen.insert(perm).second) {
      pm.rows_.insert(pm.rows_.end(), perm.begin(), perm.end());
    }
  }
  return pm;
}

uint64_t PatternMatrix::storage_bits() const {
  uint32_t id_bits = (m_ <= 1) ? 0 : std::bit_width(m_ - 1);
  return static_cast<uint64_t>(n_) * m_ * id_bits;
}

}  // namespace elda
