#pragma once

#include <cstdint>

namespace elda {

// Instrumentation counters for the cost model of the leftmost-1-bit search.
// They count model operations, not machine instructions: the implementation
// is free to use clz intrinsics, but the counters record what a bit-by-bit
// scan would have inspected.
//
//   hash_ops        digest computations over items
//   substring_scans single-bit inspections while locating leftmost-1 bits
//                   (per substring: index + 1, or the full width when empty)
//   pattern_steps   offset-accumulating hops over empty substrings while
//                   walking a permutation pattern (the terminal non-negative
//                   read is constant-time bookkeeping and is not counted)
struct OpCounter {
  uint64_t hash_ops = 0;
  uint64_t substring_scans = 0;
  uint64_t pattern_steps = 0;

  void reset() { hash_ops = substring_scans = pattern_steps = 0; }

  uint64_t scan_and_step_total() const { return substring_scans + pattern_steps; }

  OpCounter& operator+=(const OpCounter& o) {
    hash_ops += o.hash_ops;
    substring_scans += o.substring_scans;
    pattern_steps += o.pattern_steps;
    return *this;
  }
};

}  // namespace elda
