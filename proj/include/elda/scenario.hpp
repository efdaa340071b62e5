#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "elda/detector.hpp"
#include "elda/sim/simulator.hpp"

namespace elda {

// A named, runnable experiment: topology, traffic, attack schedule (ground
// truth), detector settings. The twelve attack scenarios and the no-attack
// controls ship as builtins; arbitrary specs load from JSON.
struct ScenarioSpec {
  std::string name;

  std::string topology = "tree-eval";  // builtin name or a JSON file path
  double zipf_alpha = 0.9;
  uint32_t catalog = 10000;
  double regular_rate = 3000.0;

  sim::AttackKind attack_kind = sim::AttackKind::none;
  double attack_rate = 3000.0;  // per compromised consumer
  std::string attack_prefix = "/yahoo.com";
  double attack_start_s = 2.0;
  double nonexistent_start_s = 3.0;

  double duration_s = 60.0;
  double warmup_s = 12.0;
  uint64_t seed = 1;

  size_t cs_capacity = 1000;
  size_t pit_capacity = 15000;

  DetectorConfig detector;  // backend switchable via RunOptions

  std::vector<AttackInterval> attack_schedule() const;

  // Divides rates, capacities and the catalog by `scale` (desk-scale CI runs)
  // and assembles the simulator configuration.
  sim::SimConfig make_sim_config(double scale, uint64_t seed_override) const;
  sim::SimConfig make_sim_config() const { return make_sim_config(1.0, seed); }

  std::string to_json() const;
  static ScenarioSpec from_json(const std::string& text);

  // LDA1..LDA6, FLA1..FLA6, noattack-a07/a09/a11. Throws on unknown names.
  static ScenarioSpec builtin(const std::string& name);
  static std::vector<std::string> builtin_names();      // all 15
  static std::vector<std::string> attack_scenario_names();  // the 12
  static std::vector<std::string> control_scenario_names();

  // Loads a builtin by name or a JSON spec from a path.
  static ScenarioSpec resolve(const std::string& name_or_path);
};

}  // namespace elda
