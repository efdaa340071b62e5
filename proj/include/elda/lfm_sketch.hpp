#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "elda/hash.hpp"
#include "elda/op_counter.hpp"
#include "elda/pattern_matrix.hpp"

namespace elda {

// Shape of an LFM sketch: one L-bit hash split into M substrings, aggregated
// through N permutation patterns into N L-bit registers.
struct SketchConfig {
  uint32_t l_bits = 32;
  uint32_t m_substrings = 8;
  uint32_t n_patterns = 256;
  uint64_t hash_seed = 0x5f3c0de1;
  uint64_t pattern_seed = 0xe1da;

  uint32_t substring_width() const { return l_bits / m_substrings; }

  // Throws ConfigError unless: L % M == 0, L/M >= 2, L <= 64, N <= M!.
  void validate() const;
};

// Per-substring leftmost-1 indices of one hash value; -1 marks an all-zero
// substring. Sized for the M <= 32 limit.
struct IndexSet {
  std::array<int8_t, 32> idx;
};

// Splits an L-bit digest into M substrings (most significant bits first) and
// records each substring's leftmost-1 index. Bit 0 of a substring is its
// leftmost bit. Scan cost: index + 1 inspections, or the full width for an
// all-zero substring.
inline IndexSet split_and_index(uint64_t digest, uint32_t l_bits, uint32_t m, OpCounter* ops) {
  const uint32_t w = l_bits / m;
  const uint64_t left = digest << (64 - l_bits);
  IndexSet out;
  uint64_t scans = 0;
  for (uint32_t j = 0; j < m; ++j) {
    const uint64_t chunk = left << (j * w);
    const uint32_t lead = static_cast<uint32_t>(std::countl_zero(chunk));
    if (lead < w) {
      out.idx[j] = static_cast<int8_t>(lead);
      scans += lead + 1;
    } else {
      out.idx[j] = -1;
      scans += w;
    }
  }
  if (ops) ops->substring_scans += scans;
  return out;
}

// Walks a permutation pattern over an index set: each all-zero substring
// contributes L/M to the running offset, the first populated one terminates
// the walk at offset + its leftmost-1 index. All substrings empty -> nullopt
// (the virtual permutation has no 1 bit).
inline std::optional<uint32_t> permuted_leftmost_one(const IndexSet& ix,
                                                     std::span<const uint8_t> pattern,
                                                     uint32_t substring_width,
                                                     OpCounter* ops) {
  uint32_t offset = 0;
  uint64_t skips = 0;
  for (uint8_t id : pattern) {
    const int8_t v = ix.idx[id];
    if (v < 0) {
      offset += substring_width;
      ++skips;
    } else {
      if (ops) ops->pattern_steps += skips;
      return offset + static_cast<uint32_t>(v);
    }
  }
  if (ops) ops->pattern_steps += skips;
  return std::nullopt;
}

// Leftmost-0 index of a left-aligned L-bit register; returns L when all L
// bits are set.
inline uint32_t leftmost_zero(uint64_t reg_left_aligned, uint32_t l_bits) {
  const uint32_t lead = static_cast<uint32_t>(std::countl_one(reg_left_aligned));
  return lead < l_bits ? lead : l_bits;
}

// Harmonic mean of register leftmost-0 indices with a zero-register guard:
// H = N / sum_j 1/max(R_j, 1).
double harmonic_mean_registers(std::span<const uint32_t> registers);

// Calibrated cardinality estimate C * 2^H. The constants are produced by the
// offline calibration run (`elda calibrate`) against an exact counter and
// frozen here; rerun the subcommand to regenerate them.
double estimate_from_h(double h, double calibration);

inline constexpr double kLfmCalibration = 0.734122;
inline constexpr double kHllFmCalibration = 0.723416;

// The Lightweight Flajolet-Martin sketch: one hash per item, N virtual
// permutations via the shared pattern matrix, N L-bit registers.
// Single-writer; the pattern matrix is immutable and shareable.
class LfmSketch {
 public:
  explicit LfmSketch(const SketchConfig& cfg,
                     std::shared_ptr<const PatternMatrix> patterns = nullptr);

  void insert(std::string_view item);

  // Inserts a pre-computed digest; test seam for driving worked examples.
  // Does not count a hash operation.
  void insert_digest(uint64_t digest);

  // Bulk insertion; OpenMP-parallel over patterns when enabled, bit-identical
  // to the serial loop either way.
  void insert_many(std::span<const std::string> items, bool parallel = true);

  uint64_t hash_item(std::string_view item);  // counted digest computation

  double raw_h() const;
  double estimate() const { return estimate_from_h(raw_h(), kLfmCalibration); }

  void reset();

  uint64_t insert_count() const { return insert_count_; }
  const OpCounter& ops() const { return ops_; }
  OpCounter& ops() { return ops_; }

  const SketchConfig& config() const { return cfg_; }
  const PatternMatrix& patterns() const { return *patterns_; }
  std::shared_ptr<const PatternMatrix> patterns_ptr() const { return patterns_; }

  uint32_t register_value(uint32_t i) const {
    return leftmost_zero(bitmaps_[i], cfg_.l_bits);
  }
  std::vector<uint32_t> register_values() const;
  uint64_t bitmap_word(uint32_t i) const { return bitmaps_[i]; }

  // Register bits only (N * L); the shared pattern matrix is reported
  // separately via PatternMatrix::storage_bits().
  uint64_t register_bits() const {
    return static_cast<uint64_t>(cfg_.n_patterns) * cfg_.l_bits;
  }

  bool state_equal(const LfmSketch& o) const {
    return bitmaps_ == o.bitmaps_ && insert_count_ == o.insert_count_;
  }

  void serialize(std::ostream& os) const;
  static LfmSketch deserialize(std::istream& is);

 private:
  SketchConfig cfg_;
  std::shared_ptr<const PatternMatrix> patterns_;
  std::vector<uint64_t> bitmaps_;  // left-aligned L-bit registers
  uint64_t insert_count_ = 0;
  OpCounter ops_;
};

}  // namespace elda
