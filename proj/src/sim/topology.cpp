#include "elda/sim/topology.hpp"

#include <json.hpp>

#include "elda/errors.hpp"
#include "elda/rng.hpp"

namespace elda::sim {

namespace {

const char* kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::consumer: return "consumer";
    case NodeKind::router: return "router";
    case NodeKind::producer: return "producer";
  }
  return "?";
}

NodeKind kind_from(const std::string& s) {
  if (s == "consumer") return NodeKind::consumer;
  if (s == "router") return NodeKind::router;
  if (s == "producer") return NodeKind::producer;
  throw ConfigError("unknown node kind: " + s);
}

}  // namespace

TopologySpec TopologySpec::tree_eval(uint64_t seed) {
  TopologySpec t;
  for (int i = 1; i <= 8; ++i) t.nodes.push_back({"c" + std::to_string(i), NodeKind::consumer});
  for (int i = 1; i <= 3; ++i) t.nodes.push_back({"e" + std::to_string(i), NodeKind::router});
  t.nodes.push_back({"gw", NodeKind::router});
  t.nodes.push_back({"prov", NodeKind::producer});

  Rng rng(mix_seed(seed, 0x746f706fULL));  // per-link delay draws
  auto other_link = [&](const std::string& a, const std::string& b) {
    t.links.push_back({a, b, 50e6, rng.uniform(0.003, 0.005)});
  };
  other_link("c1", "e1");
  other_link("c2", "e1");
  other_link("c3", "e1");
  other_link("c4", "e2");
  other_link("c5", "e2");
  other_link("c6", "e2");
  other_link("c7", "e3");
  other_link("c8", "e3");
  other_link("e1", "gw");
  other_link("e2", "gw");
  other_link("e3", "gw");
  t.links.push_back({"gw", "prov", 500e6, 0.020});

  t.producer_prefixes = default_prefixes();
  t.gateway = "gw";
  return t;
}

TopologySpec TopologySpec::chain() {
  TopologySpec t;
  t.nodes = {{"c1", NodeKind::consumer}, {"r1", NodeKind::router}, {"prov", NodeKind::producer}};
  t.links = {{"c1", "r1", 50e6, 0.004}, {"r1", "prov", 500e6, 0.020}};
  t.producer_prefixes = default_prefixes();
  t.gateway = "r1";
  return t;
}

int TopologySpec::node_index(const std::string& name) const {
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

void TopologySpec::validate() const {
  if (nodes.empty()) throw ConfigError("topology has no nodes");
  for (const auto& l : links) {
    if (node_index(l.a) < 0 || node_index(l.b) < 0) {
      throw ConfigError("link references unknown node: " + l.a + " - " + l.b);
    }
    if (l.bandwidth_bps <= 0 || l.delay_s < 0) {
      throw ConfigError("link " + l.a + "-" + l.b + " has invalid parameters");
    }
  }
  if (node_index(gateway) < 0) throw ConfigError("gateway node not found: " + gateway);
  bool has_producer = false;
  for (const auto& n : nodes) has_producer |= (n.kind == NodeKind::producer);
  if (!has_producer) throw ConfigError("topology has no producer");
  if (producer_prefixes.empty()) throw ConfigError("no producer prefixes registered");
}

std::string TopologySpec::to_json() const {
  nlohmann::json j;
  for (const auto& n : nodes) j["nodes"].push_back({{"name", n.name}, {"kind", kind_name(n.kind)}});
  for (const auto& l : links) {
    j["links"].push_back({{"a", l.a},
                          {"b", l.b},
                          {"bandwidth_bps", l.bandwidth_bps},
                          {"delay_s", l.delay_s}});
  }
  j["producer_prefixes"] = producer_prefixes;
  j["gateway"] = gateway;
  return j.dump(2);
}

TopologySpec TopologySpec::from_json(const std::string& text) {
  TopologySpec t;
  nlohmann::json j = nlohmann::json::parse(text);
  for (const auto& n : j.at("nodes")) {
    t.nodes.push_back({n.at("name").get<std::string>(), kind_from(n.at("kind").get<std::string>())});
  }
  for (const auto& l : j.at("links")) {
    t.links.push_back({l.at("a").get<std::string>(), l.at("b").get<std::string>(),
                       l.at("bandwidth_bps").get<double>(), l.at("delay_s").get<double>()});
  }
  t.producer_prefixes = j.at("producer_prefixes").get<std::vector<std::string>>();
  t.gateway = j.at("gateway").get<std::string>();
  t.validate();
  return t;
}

}  // namespace elda::sim
