#include "elda/baselines.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>

#include "elda/errors.hpp"
#include "elda/lfm_sketch.hpp"
#include "elda/rng.hpp"

namespace elda {

HllFmSketch::HllFmSketch(uint32_t l_bits, uint32_t n_hashes, uint64_t seed)
    : l_(l_bits), n_(n_hashes) {
  if (l_ < 2 || l_ > 64) throw ConfigError("hash length must be in [2, 64] bits");
  if (n_ == 0) throw ConfigError("hash count must be positive");
  seeds_.reserve(n_);
  std::unordered_set<uint64_t> used;
  uint64_t s = seed;
  while (seeds_.size() < n_) {
    s = splitmix64(s);
    if (used.insert(s).second) seeds_.push_back(s);
  }
  bitmaps_.assign(n_, 0);
}

void HllFmSketch::insert(std::string_view item) {
  for (uint32_t i = 0; i < n_; ++i) {
    const uint64_t h = digest_bits(item, l_, seeds_[i]);
    ++ops_.hash_ops;
    const uint64_t left = h << (64 - l_);
    const uint32_t lead = static_cast<uint32_t>(std::countl_zero(left));
    if (lead < l_) {
      ops_.substring_scans += lead + 1;
      bitmaps_[i] |= 1ULL << (63 - lead);
    } else {
      ops_.substring_scans += l_;
    }
  }
  ++insert_count_;
}

void HllFmSketch::insert_many(std::span<const std::string> items, bool parallel) {
  if (items.empty()) return;
  uint64_t scans = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : scans) if (parallel)
#endif
  for (uint32_t i = 0; i < n_; ++i) {
    uint64_t reg = bitmaps_[i];
    for (const std::string& item : items) {
      const uint64_t h = digest_bits(item, l_, seeds_[i]);
      const uint64_t left = h << (64 - l_);
      const uint32_t lead = static_cast<uint32_t>(std::countl_zero(left));
      if (lead < l_) {
        scans += lead + 1;
        reg |= 1ULL << (63 - lead);
      } else {
        scans += l_;
      }
    }
    bitmaps_[i] = reg;
  }
  ops_.hash_ops += static_cast<uint64_t>(items.size()) * n_;
  ops_.substring_scans += scans;
  insert_count_ += items.size();
}

uint32_t HllFmSketch::register_value(uint32_t i) const {
  return leftmost_zero(bitmaps_[i], l_);
}

double HllFmSketch::raw_h() const {
  double denom = 0.0;
  for (uint64_t bm : bitmaps_) {
    const uint32_t r = leftmost_zero(bm, l_);
    denom += 1.0 / static_cast<double>(r < 1 ? 1 : r);
  }
  return static_cast<double>(bitmaps_.size()) / denom;
}

double HllFmSketch::estimate() const {
  if (insert_count_ == 0) return 0.0;
  return estimate_from_h(raw_h(), kHllFmCalibration);
}

void HllFmSketch::reset() {
  bitmaps_.assign(n_, 0);
  insert_count_ = 0;
  ops_.reset();
}

void HllFmSketch::serialize(std::ostream& os) const {
  os << "hllfm-sketch v1\n"
     << "config " << l_ << ' ' << n_ << '\n'
     << "inserts " << insert_count_ << '\n';
  for (uint64_t bm : bitmaps_) {
    for (uint32_t b = 0; b < l_; ++b) os << (((bm >> (63 - b)) & 1) ? '1' : '0');
    os << '\n';
  }
}

void FrequencyBaseline::observe(std::string_view content_name) {
  auto it = records_.find(content_name);
  if (it == records_.end()) {
    if (records_.size() >= cfg_.capacity) {
      // Evict the least-recently-observed record.
      const std::string& victim = lru_.back();
      records_.erase(victim);
      lru_.pop_back();
      ++evictions_;
    }
    auto [ins, ok] = records_.emplace(std::string(content_name), Record{});
    lru_.push_front(ins->first);
    ins->second.lru_it = lru_.begin();
    it = ins;
  } else {
    lru_.splice(lru_.begin(), lru_, it->second.lru_it);
  }
  ++it->second.current;
}

double FrequencyBaseline::stddev(const Record& r) const {
  if (r.epochs < 2) return 0.0;
  return std::sqrt(r.m2 / (r.epochs - 1));
}

std::vector<FrequencyBaseline::FreqAlarm> FrequencyBaseline::end_epoch() {
  std::vector<FreqAlarm> alarms;
  for (auto& [name, r] : records_) {
    if (r.epochs >= cfg_.min_history && r.current > 0) {
      const double thr = r.mean + cfg_.k_sigma * stddev(r);
      if (static_cast<double>(r.current) > thr) {
        alarms.push_back({name, static_cast<double>(r.current), thr});
      }
    }
    // Fold the epoch count into the running mean/variance (Welford).
    const double x = static_cast<double>(r.current);
    r.epochs += 1;
    const double d = x - r.mean;
    r.mean += d / r.epochs;
    r.m2 += d * (x - r.mean);
    r.current = 0;
  }
  std::sort(alarms.begin(), alarms.end(),
            [](const FreqAlarm& a, const FreqAlarm& b) { return a.content < b.content; });
  return alarms;
}

uint64_t FrequencyBaseline::footprint_bits() const {
  uint64_t bytes = 0;
  for (const auto& [name, r] : records_) {
    bytes += name.size() + sizeof(Record);
  }
  return bytes * 8;
}

void FrequencyBaseline::serialize(std::ostream& os) const {
  os << "content,epochs,current,mean,variance\n";
  for (const std::string& name : lru_) {
    const Record& r = records_.at(name);
    const double var = r.epochs >= 2 ? r.m2 / (r.epochs - 1) : 0.0;
    os << name << ',' << r.epochs << ',' << r.current << ',' << r.mean << ',' << var << '\n';
  }
}

}  // namespace elda
