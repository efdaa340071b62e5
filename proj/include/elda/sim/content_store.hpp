#pragma once

#include <cstdint>
#include <list>
#include <optional>
#include <string>
#include <unordered_map>

#include "elda/sim/name.hpp"

namespace elda::sim {

// LRU content store. A lookup hit refreshes recency; inserting at capacity
// evicts the least recently used entry.
class ContentStore {
 public:
  explicit ContentStore(size_t capacity) : capacity_(capacity) {}

  std::optional<DataPacket> lookup(const std::string& name) {
    auto it = map_.find(name);
    if (it == map_.end()) {
      ++misses_;
      return std::nullopt;
    }
    lru_.splice(lru_.begin(), lru_, it->second);
    ++hits_;
    return it->second->second;
  }

  void insert(const DataPacket& pkt) {
    if (capacity_ == 0) return;
    auto it = map_.find(pkt.name.full);
    if (it != map_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second);
      return;
    }
    if (map_.size() >= capacity_) {
      map_.erase(lru_.back().first);
      lru_.pop_back();
    }
    lru_.emplace_front(pkt.name.full, pkt);
    map_.emplace(pkt.name.full, lru_.begin());
  }

  size_t size() const { return map_.size(); }
  size_t capacity() const { return capacity_; }
  uint64_t hits() const { return hits_; }
  uint64_t misses() const { return misses_; }
  void reset_counters() { hits_ = misses_ = 0; }

 private:
  size_t capacity_;
  std::list<std::pair<std::string, DataPacket>> lru_;  // front = most recent
  std::unordered_map<std::string, std::list<std::pair<std::string, DataPacket>>::iterator> map_;
  uint64_t hits_ = 0;
  uint64_t misses_ = 0;
};

}  // namespace elda::sim
