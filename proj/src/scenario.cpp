#include "elda/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "elda/errors.hpp"

namespace elda {

using nlohmann::json;

std::vector<AttackInterval> ScenarioSpec::attack_schedule() const {
  if (attack_kind == sim::AttackKind::none) return {};
  return {{attack_prefix, attack_start_s, duration_s}};
}

sim::SimConfig ScenarioSpec::make_sim_config(double scale, uint64_t seed_override) const {
  if (scale < 1.0) throw ConfigError("scale must be >= 1");
  sim::SimConfig c;
  if (topology == "tree-eval") {
    c.topo = sim::TopologySpec::tree_eval(seed_override);
  } else if (topology == "chain") {
    c.topo = sim::TopologySpec::chain();
  } else {
    std::ifstream in(topology);
    if (!in) throw ConfigError("cannot open topology file: " + topology);
    std::stringstream ss;
    ss << in.rdbuf();
    c.topo = sim::TopologySpec::from_json(ss.str());
  }
  c.regular.rate_per_consumer = regular_rate / scale;
  c.regular.zipf_alpha = zipf_alpha;
  c.regular.catalog = std::max<uint32_t>(10, static_cast<uint32_t>(catalog / scale));
  c.attack.kind = attack_kind;
  c.attack.rate_per_attacker = attack_rate / scale;
  c.attack.prefix = attack_prefix;
  c.attack.start_s = attack_start_s;
  c.attack.nonexistent_start_s = nonexistent_start_s;
  c.duration_s = duration_s;
  c.warmup_s = warmup_s;
  c.seed = seed_override;
  c.cs_capacity = std::max<size_t>(10, static_cast<size_t>(cs_capacity / scale));
  c.pit_capacity = std::max<size_t>(20, static_cast<size_t>(pit_capacity / scale));
  c.detector = detector;
  c.detector->threshold.rng_seed = mix_seed(seed_override, 0x7468cafeULL);
  return c;
}

std::string ScenarioSpec::to_json() const {
  json j;
  j["name"] = name;
  j["topology"] = topology;
  j["zipf_alpha"] = zipf_alpha;
  j["catalog"] = catalog;
  j["regular_rate"] = regular_rate;
  j["attack"]["kind"] = attack_kind == sim::AttackKind::none
                            ? "none"
                            : (attack_kind == sim::AttackKind::lda ? "lda" : "fla");
  j["attack"]["rate_per_attacker"] = attack_rate;
  j["attack"]["prefix"] = attack_prefix;
  j["attack"]["start_s"] = attack_start_s;
  j["attack"]["nonexistent_start_s"] = nonexistent_start_s;
  j["duration_s"] = duration_s;
  j["warmup_s"] = warmup_s;
  j["seed"] = seed;
  j["cs_capacity"] = cs_capacity;
  j["pit_capacity"] = pit_capacity;
  j["detector"]["backend"] = detector.backend == SketchBackend::lfm ? "lfm" : "hll-fm";
  j["detector"]["threshold_on_raw_h"] = detector.threshold_on_raw_h;
  j["detector"]["epoch_seconds"] = detector.epoch_seconds;
  j["detector"]["sketch"] = {{"l_bits", detector.sketch.l_bits},
                             {"m_substrings", detector.sketch.m_substrings},
                             {"n_patterns", detector.sketch.n_patterns},
                             {"hash_seed", detector.sketch.hash_seed},
                             {"pattern_seed", detector.sketch.pattern_seed}};
  j["detector"]["threshold"] = {{"alpha", detector.threshold.alpha},
                                {"sample_size", detector.threshold.sample_size},
                                {"resamples", detector.threshold.resamples},
                                {"growth_step", detector.threshold.growth_step},
                                {"epsilon", detector.threshold.epsilon}};
  return j.dump(2);
}

ScenarioSpec ScenarioSpec::from_json(const std::string& text) {
  ScenarioSpec s;
  json j = json::parse(text);
  s.name = j.value("name", "custom");
  s.topology = j.value("topology", "tree-eval");
  s.zipf_alpha = j.value("zipf_alpha", 0.9);
  s.catalog = j.value("catalog", 10000u);
  s.regular_rate = j.value("regular_rate", 3000.0);
  if (j.contains("attack")) {
    const auto& a = j["attack"];
    const std::string kind = a.value("kind", "none");
    if (kind == "none") s.attack_kind = sim::AttackKind::none;
    else if (kind == "lda") s.attack_kind = sim::AttackKind::lda;
    else if (kind == "fla") s.attack_kind = sim::AttackKind::fla;
    else throw ConfigError("unknown attack kind: " + kind);
    s.attack_rate = a.value("rate_per_attacker", 3000.0);
    s.attack_prefix = a.value("prefix", std::string("/yahoo.com"));
    s.attack_start_s = a.value("start_s", 2.0);
    s.nonexistent_start_s = a.value("nonexistent_start_s", 3.0);
  }
  s.duration_s = j.value("duration_s", 60.0);
  s.warmup_s = j.value("warmup_s", 12.0);
  s.seed = j.value("seed", 1ull);
  s.cs_capacity = j.value("cs_capacity", size_t{1000});
  s.pit_capacity = j.value("pit_capacity", size_t{15000});
  if (j.contains("detector")) {
    const auto& d = j["detector"];
    const std::string backend = d.value("backend", "lfm");
    if (backend == "lfm") s.detector.backend = SketchBackend::lfm;
    else if (backend == "hll-fm") s.detector.backend = SketchBackend::hll_fm;
    else throw ConfigError("unknown detector backend: " + backend);
    s.detector.threshold_on_raw_h = d.value("threshold_on_raw_h", false);
    s.detector.epoch_seconds = d.value("epoch_seconds", 1.0);
    if (d.contains("sketch")) {
      const auto& k = d["sketch"];
      s.detector.sketch.l_bits = k.value("l_bits", 32u);
      s.detector.sketch.m_substrings = k.value("m_substrings", 8u);
      s.detector.sketch.n_patterns = k.value("n_patterns", 256u);
      s.detector.sketch.hash_seed = k.value("hash_seed", uint64_t{0x5f3c0de1});
      s.detector.sketch.pattern_seed = k.value("pattern_seed", uint64_t{0xe1da});
    }
    if (d.contains("threshold")) {
      const auto& t = d["threshold"];
      s.detector.threshold.alpha = t.value("alpha", 0.005);
      s.detector.threshold.sample_size = t.value("sample_size", 10u);
      s.detector.threshold.resamples = t.value("resamples", 1000u);
      s.detector.threshold.growth_step = t.value("growth_step", 0.5);
      s.detector.threshold.epsilon = t.value("epsilon", 0.05);
    }
  }
  return s;
}

namespace {

// Table of the twelve attack rows: Zipf exponent x per-attacker intensity.
struct AttackRow {
  const char* suffix;
  double alpha;
  double rate;
};
constexpr AttackRow kAttackRows[] = {
    {"1", 0.7, 3000.0}, {"2", 0.7, 6000.0}, {"3", 0.9, 3000.0},
    {"4", 0.9, 6000.0}, {"5", 1.1, 3000.0}, {"6", 1.1, 6000.0},
};

}  // namespace

ScenarioSpec ScenarioSpec::builtin(const std::string& name) {
  ScenarioSpec s;
  s.name = name;
  if (name == "noattack-a07" || name == "noattack-a09" || name == "noattack-a11") {
    s.zipf_alpha = name == "noattack-a07" ? 0.7 : (name == "noattack-a09" ? 0.9 : 1.1);
    s.attack_kind = sim::AttackKind::none;
    return s;
  }
  for (const auto& row : kAttackRows) {
    if (name == std::string("LDA") + row.suffix) {
      s.zipf_alpha = row.alpha;
      s.attack_rate = row.rate;
      s.attack_kind = sim::AttackKind::lda;
      return s;
    }
    if (name == std::string("FLA") + row.suffix) {
      s.zipf_alpha = row.alpha;
      s.attack_rate = row.rate;
      s.attack_kind = sim::AttackKind::fla;
      return s;
    }
  }
  throw ConfigError("unknown builtin scenario: " + name);
}

std::vector<std::string> ScenarioSpec::attack_scenario_names() {
  std::vector<std::string> out;
  for (const auto& row : kAttackRows) out.push_back(std::string("LDA") + row.suffix);
  for (const auto& row : kAttackRows) out.push_back(std::string("FLA") + row.suffix);
  return out;
}

std::vector<std::string> ScenarioSpec::control_scenario_names() {
  return {"noattack-a07", "noattack-a09", "noattack-a11"};
}

std::vector<std::string> ScenarioSpec::builtin_names() {
  auto out = attack_scenario_names();
  for (const auto& c : control_scenario_names()) out.push_back(c);
  return out;
}

ScenarioSpec ScenarioSpec::resolve(const std::string& name_or_path) {
  for (const auto& b : builtin_names()) {
    if (b == name_or_path) return builtin(name_or_path);
  }
  std::ifstream in(name_or_path);
  if (!in) {
    throw ConfigError("not a builtin scenario and not a readable file: " + name_or_path);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

}  // namespace elda
