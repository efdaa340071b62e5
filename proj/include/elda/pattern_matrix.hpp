#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace elda {

// Saturating factorial; anything above 2^63 is "effectively unbounded" for
// pattern-count checks.
uint64_t factorial_capped(uint32_t m);

// N rows, each a permutation of the substring identifiers {0..M-1}. A row
// describes one virtual rearrangement of a hash value's substrings. The
// matrix is immutable after generation and shared by all sketches that use
// the same configuration.
class PatternMatrix {
 public:
  PatternMatrix() = default;

  // Uniformly samples n distinct permutations of {0..m-1}, reproducibly from
  // the seed. Throws ConfigError when n exceeds m!.
  static PatternMatrix generate(uint32_t m, uint32_t n, uint64_t seed);

  uint32_t substrings() const { return m_; }
  uint32_t patterns() const { return n_; }

  std::span<const uint8_t> row(uint32_t i) const {
    return {rows_.data() + static_cast<size_t>(i) * m_, m_};
  }

  // Storage cost if identifiers were packed: N * M * ceil(log2(M)) bits.
  uint64_t storage_bits() const;

 private:
  uint32_t m_ = 0;
  uint32_t n_ = 0;
  std::vector<uint8_t> rows_;  // row-major, n_ * m_
};

}  // namespace elda
