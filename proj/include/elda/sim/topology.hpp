#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace elda::sim {

enum class NodeKind { consumer, router, producer };

struct NodeSpec {
  std::string name;
  NodeKind kind;
};

struct LinkSpec {
  std::string a;
  std::string b;
  double bandwidth_bps;
  double delay_s;
};

// Key-value tree description of a network; scenario files reference either a
// built-in topology or a JSON file with this content.
struct TopologySpec {
  std::vector<NodeSpec> nodes;
  std::vector<LinkSpec> links;
  std::vector<std::string> producer_prefixes;  // registered at every producer
  std::string gateway;                         // detector attachment default

  // The evaluation tree: eight consumers on three edge routers (1-3, 4-6,
  // 7-8), one gateway, one provider. Gateway-provider link 500 Mb/s / 20 ms;
  // other links 50 Mb/s with fixed per-link delays drawn uniformly from
  // [3, 5] ms at build time, seeded.
  static TopologySpec tree_eval(uint64_t seed);

  // Minimal consumer - router - producer chain for smoke tests.
  static TopologySpec chain();

  std::string to_json() const;
  static TopologySpec from_json(const std::string& text);

  void validate() const;
  int node_index(const std::string& name) const;  // -1 when absent
};

inline const std::vector<std::string>& default_prefixes() {
  static const std::vector<std::string> p = {"/google.com", "/amazon.com", "/youtube.com",
                                             "/yahoo.com", "/facebook.com"};
  return p;
}

}  // namespace elda::sim
