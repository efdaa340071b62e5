#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "elda/detector.hpp"
#include "elda/sim/topology.hpp"
#include "elda/sim/traffic.hpp"

namespace elda::sim {

struct SimConfig {
  TopologySpec topo;
  RegularTraffic regular;
  AttackTraffic attack;
  std::vector<std::string> compromised = {"c2", "c4", "c7"};

  double duration_s = 60.0;
  double warmup_s = 12.0;  // regular traffic before t=0; detectors learn here
  uint64_t seed = 1;

  size_t cs_capacity = 1000;
  size_t pit_capacity = 15000;
  double pit_timeout_s = 2.0;

  double rto_s = 1.0;  // consumer retransmission timer
  uint32_t max_retransmits = 3;

  uint32_t interest_bytes = 64;
  uint32_t data_header_bytes = 64;
  uint32_t payload_bytes = 1024;
  double queue_capacity_bytes = 131072;  // per directed link, drop-tail

  std::optional<DetectorConfig> detector;
  std::vector<std::string> detector_routers;  // empty = topo.gateway

  // Replace the sketch detector with the per-content frequency baseline
  // (comparison scheme); epochs follow detector.epoch_seconds.
  bool use_freq_observer = false;
  FrequencyBaseline::Config freq_config;
};

// One per-second per-node metrics sample. Columns that do not apply to a
// node kind are NaN and serialize as empty CSV cells.
struct MetricsRow {
  double time_s;  // end of the sampled second, 1..duration
  std::string node;
  double cache_hit_rate;
  double pit_available_rate;
  double avg_rtt_ms;
  uint64_t interests_in;
  uint64_t data_out;
};

struct RouterCounters {
  uint64_t interests_received = 0;
  uint64_t cs_hits = 0;
  uint64_t pit_created = 0;
  uint64_t pit_aggregated = 0;
  uint64_t pit_dropped_full = 0;
  uint64_t fib_drops = 0;
  uint64_t pit_expired = 0;
  uint64_t data_received = 0;
  uint64_t data_forwarded = 0;
  uint64_t unsolicited_data = 0;
};

struct RunResult {
  std::vector<MetricsRow> metrics;
  std::vector<Alarm> alarms;  // scored window only (wall time >= 0)
  std::vector<EpochTraceRow> detector_trace;
  std::map<std::string, RouterCounters> routers;

  uint64_t issued_first = 0;       // distinct logical requests put on the wire
  uint64_t issued_retx = 0;        // retransmissions
  uint64_t coalesced = 0;          // requests absorbed by an outstanding name
  uint64_t satisfied = 0;
  uint64_t abandoned = 0;          // retransmit budget exhausted
  uint64_t outstanding_at_end = 0;
  uint64_t queue_drops = 0;
  uint64_t producer_unanswered = 0;
  uint64_t duplicate_data = 0;

  double mean_rtt_ms = 0.0;  // over satisfied regular interests, whole run
  uint64_t detector_state_bits = 0;  // end-of-run observer footprint
};

std::string metrics_csv(const std::vector<MetricsRow>& rows);
std::string detector_trace_csv(const std::vector<EpochTraceRow>& rows);

// Deterministic single-threaded discrete-event run:
// (topology, profiles, seed) -> bit-identical RunResult.
class Simulator {
 public:
  explicit Simulator(SimConfig cfg);
  ~Simulator();
  RunResult run();

 private:
  struct Impl;
  Impl* impl_;
};

RunResult run_simulation(const SimConfig& cfg);

}  // namespace elda::sim
