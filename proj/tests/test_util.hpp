#pragma once

// Shared oracles for the sketch tests. These deliberately take the slow,
// literal route (materialize, scan bit by bit) so they stay independent of
// the production bit tricks they check.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "elda/lfm_sketch.hpp"

namespace elda::testing {

// Naive per-substring full scan: leftmost-1 index of substring j of an
// L-bit value, MSB-first.
inline std::vector<int> split_oracle(uint64_t digest, uint32_t l_bits, uint32_t m) {
  const uint32_t w = l_bits / m;
  std::vector<int> out;
  for (uint32_t j = 0; j < m; ++j) {
    int idx = -1;
    for (uint32_t b = 0; b < w; ++b) {
      const uint32_t bitpos = l_bits - 1 - (j * w + b);  // MSB-first
      if ((digest >> bitpos) & 1) {
        idx = static_cast<int>(b);
        break;
      }
    }
    out.push_back(idx);
  }
  return out;
}

// Physically materializes the virtual permutation (concatenates substrings in
// pattern order) and scans for the leftmost 1 bit.
inline std::optional<uint32_t> materialized_leftmost_one(uint64_t digest, uint32_t l_bits,
                                                         uint32_t m,
                                                         std::span<const uint8_t> pattern) {
  const uint32_t w = l_bits / m;
  std::vector<int> bits;
  for (uint8_t id : pattern) {
    for (uint32_t b = 0; b < w; ++b) {
      const uint32_t bitpos = l_bits - 1 - (id * w + b);
      bits.push_back(static_cast<int>((digest >> bitpos) & 1));
    }
  }
  for (uint32_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) return i;
  }
  return std::nullopt;
}

// Naive leftmost-zero over an explicit bit vector (bit 0 first).
inline uint32_t leftmost_zero_oracle(const std::vector<int>& bits) {
  for (uint32_t i = 0; i < bits.size(); ++i) {
    if (!bits[i]) return i;
  }
  return static_cast<uint32_t>(bits.size());
}

inline std::vector<int> register_bits(const LfmSketch& sk, uint32_t reg) {
  std::vector<int> bits;
  for (uint32_t b = 0; b < sk.config().l_bits; ++b) {
    bits.push_back(static_cast<int>((sk.bitmap_word(reg) >> (63 - b)) & 1));
  }
  return bits;
}

}  // namespace elda::testing
