#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "elda/sim/name.hpp"

namespace elda::sim {

// Forwarding Information Base: name-prefix routes, longest prefix (most
// matching components) wins. "/" acts as a default route.
class Fib {
 public:
  void add_route(std::string prefix, uint32_t egress) {
    routes_.push_back({std::move(prefix), egress});
  }

  std::optional<uint32_t> lookup(const Name& name) const {
    int best_len = -1;
    std::optional<uint32_t> best;
    for (const auto& r : routes_) {
      const int len = match_components(r.prefix, name.full);
      if (len > best_len) {
        best_len = len;
        best = r.egress;
      }
    }
    return best_len >= 0 ? best : std::nullopt;
  }

  size_t size() const { return routes_.size(); }

 private:
  struct Route {
    std::string prefix;
    uint32_t egress;
  };

  // Number of leading components of `prefix` matching `name`, or -1 when the
  // prefix is not a prefix of the name. "/" matches everything with 0.
  static int match_components(std::string_view prefix, std::string_view name) {
    if (prefix == "/" || prefix.empty()) return 0;
    if (name.substr(0, prefix.size()) != prefix) return -1;
    if (name.size() > prefix.size() && name[prefix.size()] != '/') return -1;
    return static_cast<int>(std::count(prefix.begin(), prefix.end(), '/'));
  }

  std::vector<Route> routes_;
};

}  // namespace elda::sim
