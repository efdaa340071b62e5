#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "elda/baselines.hpp"
#include "elda/lfm_sketch.hpp"
#include "elda/threshold.hpp"

namespace elda {

enum class SketchBackend { lfm, hll_fm };

struct DetectorConfig {
  SketchConfig sketch;          // shape for either backend
  ThresholdConfig threshold;
  SketchBackend backend = SketchBackend::lfm;
  bool threshold_on_raw_h = false;  // compare thresholds on H instead of Est
  double epoch_seconds = 1.0;
};

struct Alarm {
  std::string prefix;
  uint64_t epoch_index = 0;
  double statistic = 0.0;
  double threshold = 0.0;
  double wall_time = 0.0;  // simulated seconds at the epoch boundary
};

struct EpochTraceRow {
  uint64_t epoch_index;
  double wall_time;
  std::string prefix;
  double statistic;
  std::optional<double> threshold;
  bool alarm;
};

struct AttackInterval {
  std::string prefix;
  double start;  // inclusive
  double end;    // inclusive
};

struct DetectionReport {
  std::optional<double> detection_rate;  // unset when no attacks scheduled
  double false_positive_rate = 0.0;
  uint64_t attacks = 0;
  uint64_t detected = 0;
  uint64_t alarm_count = 0;
  uint64_t false_positives = 0;
};

// Per-name-prefix monitoring: interests are routed by their first name
// component into a sketch, epochs close with a threshold comparison, and
// alarms carry the offending statistic. One instance per monitored router,
// driven single-threaded.
class Detector {
 public:
  explicit Detector(DetectorConfig cfg);

  // Routes the full interest name into the monitor for its first component,
  // creating the monitor on first sight. The whole name is the sketch item;
  // the prefix is only the routing key.
  void observe_interest(std::string_view interest_name);

  // Closes the current epoch on every monitor: statistic, threshold
  // comparison, history update, sketch reset.
  std::vector<Alarm> end_epoch(double wall_time);

  static DetectionReport score_run(const std::vector<Alarm>& alarms,
                                   const std::vector<AttackInterval>& schedule);

  const std::vector<EpochTraceRow>& trace() const { return trace_; }
  uint64_t epoch_index() const { return epoch_index_; }
  size_t monitor_count() const { return monitors_.size(); }

  // Register bits per monitored prefix (constant in the number of distinct
  // names seen) and the shared pattern matrix cost, reported once.
  uint64_t per_prefix_state_bits() const;
  uint64_t shared_state_bits() const;
  uint64_t total_state_bits() const;

  std::optional<double> current_threshold(std::string_view prefix) const;
  const DetectorConfig& config() const { return cfg_; }

 private:
  struct Monitor {
    std::string prefix;
    std::variant<LfmSketch, HllFmSketch> sketch;
    MonitorHistory history;
    std::optional<double> threshold;
  };

  Monitor& monitor_for(std::string_view prefix);
  double epoch_statistic(Monitor& m) const;

  DetectorConfig cfg_;
  std::shared_ptr<const PatternMatrix> patterns_;  // shared by all LFM monitors
  std::vector<std::unique_ptr<Monitor>> monitors_;  // insertion order, for determinism
  std::unordered_map<std::string, size_t> by_prefix_;
  std::vector<EpochTraceRow> trace_;
  uint64_t epoch_index_ = 0;
};

// First component of a hierarchical name: "/yahoo.com/12345" -> "/yahoo.com".
std::string_view name_prefix(std::string_view name);

}  // namespace elda
