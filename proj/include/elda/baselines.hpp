#pragma once

#include <cstdint>
#include <iosfwd>
#include <list>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "elda/hash.hpp"
#include "elda/op_counter.hpp"

namespace elda {

// The conventional hyperloglog-style FM sketch used as the comparison point:
// N seeded hash values per item, one L-bit register per hash function.
// Realized as one keyed hash with N distinct derived seeds.
class HllFmSketch {
 public:
  HllFmSketch(uint32_t l_bits, uint32_t n_hashes, uint64_t seed);

  void insert(std::string_view item);
  void insert_many(std::span<const std::string> items, bool parallel = true);

  double raw_h() const;
  // Same estimator form and calibration procedure as the LFM sketch, plus the
  // empty-sketch short circuit.
  double estimate() const;

  void reset();

  uint64_t insert_count() const { return insert_count_; }
  const OpCounter& ops() const { return ops_; }
  uint32_t hashes() const { return n_; }
  uint32_t l_bits() const { return l_; }
  uint32_t register_value(uint32_t i) const;
  uint64_t register_bits() const { return static_cast<uint64_t>(n_) * l_; }

  void serialize(std::ostream& os) const;

 private:
  uint32_t l_;
  uint32_t n_;
  std::vector<uint64_t> seeds_;    // pairwise distinct
  std::vector<uint64_t> bitmaps_;  // left-aligned L-bit registers
  uint64_t insert_count_ = 0;
  OpCounter ops_;
};

// Ground-truth distinct counter over item digests. Calibration oracle for
// both sketches.
class ExactCounter {
 public:
  void insert(std::string_view item) { seen_.insert(digest64(item, 0xacc0)); }
  uint64_t count() const { return seen_.size(); }
  void reset() { seen_.clear(); }

 private:
  std::unordered_set<uint64_t> seen_;
};

// Per-content request-frequency deviation detector, reimplemented from the
// comparison scheme's description: flags a content whose current-epoch
// request count exceeds historical mean + k * stddev. Memory grows with the
// number of distinct monitored contents.
class FrequencyBaseline {
 public:
  struct Config {
    size_t capacity = 10000;
    double k_sigma = 3.0;
    uint32_t min_history = 3;  // epochs of history before a record can alarm
  };

  struct FreqAlarm {
    std::string content;
    double count;
    double threshold;
  };

  explicit FrequencyBaseline(Config cfg = {}) : cfg_(cfg) {}

  void observe(std::string_view content_name);

  // Closes the epoch: returns contents whose frequency deviated, then folds
  // the epoch counts into the running statistics.
  std::vector<FreqAlarm> end_epoch();

  size_t tracked_contents() const { return records_.size(); }
  uint64_t evictions() const { return evictions_; }
  uint64_t footprint_bits() const;

  // Tabular record dump: content, epochs, current count, mean, variance.
  void serialize(std::ostream& os) const;

 private:
  struct Record {
    uint64_t current = 0;  // this epoch's count
    double mean = 0.0;
    double m2 = 0.0;  // Welford accumulator
    uint32_t epochs = 0;
    std::list<std::string>::iterator lru_it;
  };

  struct StringHash {
    using is_transparent = void;
    size_t operator()(std::string_view sv) const { return std::hash<std::string_view>{}(sv); }
  };

  double stddev(const Record& r) const;

  Config cfg_;
  std::unordered_map<std::string, Record, StringHash, std::equal_to<>> records_;
  std::list<std::string> lru_;  // front = most recently observed
  uint64_t evictions_ = 0;
};

}  // namespace elda
