#include "elda/lfm_sketch.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "elda/errors.hpp"

namespace elda {

void SketchConfig::validate() const {
  if (l_bits < 2 || l_bits > 64) throw ConfigError("hash length must be in [2, 64] bits");
  if (m_substrings == 0 || m_substrings > 32) throw ConfigError("substring count must be in [1, 32]");
  if (l_bits % m_substrings != 0) throw ConfigError("hash length must be divisible by substring count");
  if (l_bits / m_substrings < 2) throw ConfigError("substrings must be at least 2 bits wide");
  if (n_patterns == 0) throw ConfigError("pattern count must be positive");
  if (static_cast<uint64_t>(n_patterns) > factorial_capped(m_substrings)) {
    throw ConfigError("pattern count exceeds the number of distinct permutations");
  }
}

double harmonic_mean_registers(std::span<const uint32_t> registers) {
  double denom = 0.0;
  for (uint32_t r : registers) denom += 1.0 / static_cast<double>(r < 1 ? 1 : r);
  return static_cast<double>(registers.size()) / denom;
}

double estimate_from_h(double h, double calibration) {
  return calibration * std::exp2(h);
}

LfmSketch::LfmSketch(const SketchConfig& cfg, std::shared_ptr<const PatternMatrix> patterns)
    : cfg_(cfg), patterns_(std::move(patterns)) {
  cfg_.validate();
  if (!patterns_) {
    patterns_ = std::make_shared<PatternMatrix>(
        PatternMatrix::generate(cfg_.m_substrings, cfg_.n_patterns, cfg_.pattern_seed));
  }
  if (patterns_->substrings() != cfg_.m_substrings || patterns_->patterns() != cfg_.n_patterns) {
    throw ConfigError("pattern matrix shape does not match sketch config");
  }
  bitmaps_.assign(cfg_.n_patterns, 0);
}

uint64_t LfmSketch::hash_item(std::string_view item) {
  ++ops_.hash_ops;
  return digest_bits(item, cfg_.l_bits, cfg_.hash_seed);
}

void LfmSketch::insert(std::string_view item) {
  insert_digest(hash_item(item));
}

void LfmSketch::insert_digest(uint64_t digest) {
  const uint32_t w = cfg_.substring_width();
  const IndexSet ix = split_and_index(digest, cfg_.l_bits, cfg_.m_substrings, &ops_);
  for (uint32_t i = 0; i < cfg_.n_patterns; ++i) {
    if (auto k = permuted_leftmost_one(ix, patterns_->row(i), w, &ops_)) {
      bitmaps_[i] |= 1ULL << (63 - *k);
    }
  }
  ++insert_count_;
}

void LfmSketch::insert_many(std::span<const std::string> items, bool parallel) {
  if (items.empty()) return;
  const uint32_t w = cfg_.substring_width();
  const uint32_t n = cfg_.n_patterns;

  // Blocked two-phase kernel: index sets per item, then per-pattern register
  // aggregation. Each pattern's register is written by exactly one thread, so
  // the result is bit-identical to the serial path.
  constexpr size_t kBlock = 1 << 15;
  std::vector<IndexSet> ixs(std::min(items.size(), kBlock));
  for (size_t base = 0; base < items.size(); base += kBlock) {
    const size_t count = std::min(kBlock, items.size() - base);
    uint64_t scans = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : scans) if (parallel)
#endif
    for (size_t t = 0; t < count; ++t) {
      OpCounter local;
      const uint64_t d = digest_bits(items[base + t], cfg_.l_bits, cfg_.hash_seed);
      ixs[t] = split_and_index(d, cfg_.l_bits, cfg_.m_substrings, &local);
      scans += local.substring_scans;
    }
    uint64_t steps = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : steps) if (parallel)
#endif
    for (uint32_t i = 0; i < n; ++i) {
      OpCounter local;
      uint64_t reg = bitmaps_[i];
      const auto row = patterns_->row(i);
      for (size_t t = 0; t < count; ++t) {
        if (auto k = permuted_leftmost_one(ixs[t], row, w, &local)) {
          reg |= 1ULL << (63 - *k);
        }
      }
      bitmaps_[i] = reg;
      steps += local.pattern_steps;
    }
    ops_.hash_ops += count;
    ops_.substring_scans += scans;
    ops_.pattern_steps += steps;
    insert_count_ += count;
  }
}

double LfmSketch::raw_h() const {
  double denom = 0.0;
  for (uint64_t bm : bitmaps_) {
    const uint32_t r = leftmost_zero(bm, cfg_.l_bits);
    denom += 1.0 / static_cast<double>(r < 1 ? 1 : r);
  }
  return static_cast<double>(bitmaps_.size()) / denom;
}

std::vector<uint32_t> LfmSketch::register_values() const {
  std::vector<uint32_t> out(bitmaps_.size());
  for (size_t i = 0; i < bitmaps_.size(); ++i) {
    out[i] = leftmost_zero(bitmaps_[i], cfg_.l_bits);
  }
  return out;
}

void LfmSketch::reset() {
  bitmaps_.assign(cfg_.n_patterns, 0);
  insert_count_ = 0;
  ops_.reset();
}

void LfmSketch::serialize(std::ostream& os) const {
  os << "lfm-sketch v1\n"
     << "config " << cfg_.l_bits << ' ' << cfg_.m_substrings << ' ' << cfg_.n_patterns << ' '
     << cfg_.hash_seed << ' ' << cfg_.pattern_seed << '\n'
     << "inserts " << insert_count_ << '\n';
  for (uint64_t bm : bitmaps_) {
    for (uint32_t b = 0; b < cfg_.l_bits; ++b) {
      os << (((bm >> (63 - b)) & 1) ? '1' : '0');
    }
    os << '\n';
  }
}

LfmSketch LfmSketch::deserialize(std::istream& is) {
  std::string tag, ver, word;
  is >> tag >> ver;
  if (tag != "lfm-sketch" || ver != "v1") throw ConfigError("bad sketch record header");
  SketchConfig cfg;
  is >> word >> cfg.l_bits >> cfg.m_substrings >> cfg.n_patterns >> cfg.hash_seed >> cfg.pattern_seed;
  uint64_t inserts = 0;
  is >> word >> inserts;
  LfmSketch sk(cfg);
  for (uint32_t i = 0; i < cfg.n_patterns; ++i) {
    std::string bits;
    is >> bits;
    if (bits.size() != cfg.l_bits) throw ConfigError("bad sketch record bitmap");
    uint64_t bm = 0;
    for (uint32_t b = 0; b < cfg.l_bits; ++b) {
      if (bits[b] == '1') bm |= 1ULL << (63 - b);
    }
    sk.bitmaps_[i] = bm;
  }
  sk.insert_count_ = inserts;
  return sk;
}

}  // namespace elda
