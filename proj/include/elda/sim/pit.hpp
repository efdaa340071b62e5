#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

namespace elda::sim {

// Pending Interest Table with interest aggregation, a hard capacity, and
// entry timeouts. Duplicate interests for a pending name aggregate into one
// entry by appending the ingress interface; at capacity new entries are
// dropped.
class PitTable {
 public:
  enum class RecordResult { created, aggregated, full };

  PitTable(size_t capacity, double timeout) : capacity_(capacity), timeout_(timeout) {}

  RecordResult record(const std::string& name, uint32_t ingress, double now) {
    auto it = map_.find(name);
    if (it != map_.end()) {
      auto& ifaces = it->second.ingress;
      if (std::find(ifaces.begin(), ifaces.end(), ingress) == ifaces.end()) {
        ifaces.push_back(ingress);
      }
      return RecordResult::aggregated;
    }
    if (map_.size() >= capacity_) return RecordResult::full;
    Entry e;
    e.ingress.push_back(ingress);
    e.created = now;
    e.expires = now + timeout_;
    map_.emplace(name, std::move(e));
    expiry_.push({now + timeout_, name});
    return RecordResult::created;
  }

  // Consumes the entry on data arrival; returns the ingress fan-out list.
  std::optional<std::vector<uint32_t>> consume(const std::string& name) {
    auto it = map_.find(name);
    if (it == map_.end()) return std::nullopt;
    std::vector<uint32_t> out = std::move(it->second.ingress);
    map_.erase(it);
    return out;
  }

  // Drops entries that expired at or before `now`; returns how many.
  size_t expire_until(double now) {
    size_t expired = 0;
    while (!expiry_.empty() && expiry_.top().when <= now) {
      const auto top = expiry_.top();
      expiry_.pop();
      auto it = map_.find(top.name);
      // Lazy invalidation: the entry may have been consumed and recreated.
      if (it != map_.end() && it->second.expires <= top.when) {
        map_.erase(it);
        ++expired;
      }
    }
    return expired;
  }

  size_t size() const { return map_.size(); }
  size_t capacity() const { return capacity_; }
  double available_rate() const {
    return capacity_ == 0
               ? 0.0
               : static_cast<double>(capacity_ - map_.size()) / static_cast<double>(capacity_);
  }

 private:
  struct Entry {
    std::vector<uint32_t> ingress;
    double created = 0.0;
    double expires = 0.0;
  };
  struct Expiry {
    double when;
    std::string name;
    bool operator>(const Expiry& o) const { return when > o.when; }
  };

  size_t capacity_;
  double timeout_;
  std::unordered_map<std::string, Entry> map_;
  std::priority_queue<Expiry, std::vector<Expiry>, std::greater<>> expiry_;
};

}  // namespace elda::sim
