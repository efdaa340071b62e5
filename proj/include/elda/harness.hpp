#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "elda/detector.hpp"
#include "elda/scenario.hpp"
#include "elda/sim/simulator.hpp"

namespace elda {

enum class DetectorMode { elda, strawman, freq };

struct RunOptions {
  uint64_t seed = 0;  // 0 = scenario's own seed
  double scale = 1.0;
  std::string out_dir = "out";
  DetectorMode detector = DetectorMode::elda;
  bool write_artifacts = true;
  bool charts = true;
};

struct RunOutcome {
  ScenarioSpec spec;
  sim::RunResult result;
  DetectionReport report;
  std::string dir;  // artifact directory when written
};

RunOutcome harness_run(const ScenarioSpec& spec, const RunOptions& opts);

struct SweepRow {
  std::string scenario;
  DetectionReport report;
  double mean_rtt_ms = 0.0;
  double gateway_hit_after_onset = 0.0;  // mean over seconds after attack start
  double gateway_pit_min = 1.0;          // min available rate over the run
  uint64_t control_epochs = 0;           // trace epochs in no-attack runs
};

struct SweepSummary {
  std::vector<SweepRow> rows;
  uint64_t total_attacks = 0;
  uint64_t total_detected = 0;
  uint64_t total_false_positives = 0;
  uint64_t total_control_epochs = 0;
  std::string csv() const;
};

// Runs the twelve attack scenarios plus the no-attack controls; scenario
// runs execute in parallel, one isolated simulation per worker.
SweepSummary harness_sweep(const RunOptions& opts, bool parallel = true);

struct AccuracyCell {
  uint32_t n_patterns;
  uint64_t cardinality;
  uint32_t trials;
  double lfm_bias, lfm_se;  // mean(ratio) - 1 and std(ratio), ratio = est/true
  double hll_bias, hll_se;
  double lfm_mean_ratio, hll_mean_ratio;
  double mean_gap;       // |mean ratio difference|
  double combined_sem;   // sqrt(se_l^2 + se_h^2) / sqrt(trials)
};

struct AccuracyTable {
  std::vector<AccuracyCell> cells;
  std::string csv() const;
};

AccuracyTable harness_accuracy(const std::vector<uint32_t>& pattern_counts,
                               const std::vector<uint64_t>& cardinalities, uint32_t trials,
                               uint64_t seed, bool parallel = true);

struct ComplexityReport {
  uint64_t inserts;
  // Lightweight sketch
  double lfm_hash_per_insert;
  double lfm_scan_step_per_insert;
  double lfm_bound;  // M*(2-(1/2)^(L/M-1)) + N
  // Hyperloglog-FM sketch
  double hll_hash_per_insert;
  double hll_scan_per_insert;
  double hll_expected_scan;  // N*(2-(1/2)^(L-1))
  std::string text() const;
};

ComplexityReport harness_complexity(uint64_t inserts, uint64_t seed);

struct CalibrationResult {
  double c_lfm;
  double c_hll;
  double heldout_median_ratio_lfm;  // at 5e4 with the fitted constant
  double heldout_median_ratio_hll;
  std::vector<std::string> residual_rows;  // per cardinality medians
  std::string csv() const;
};

// Fits the estimator constants against the exact counter over cardinalities
// {1e2, 1e3, 1e4, 1e5} x trials; pooled median ratio of 1 defines C.
CalibrationResult harness_calibrate(uint32_t trials, uint64_t seed, bool parallel = true);

struct BenchRow {
  std::string mode;
  uint64_t items;
  double ns_per_item;
  double items_per_second;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  double elda_vs_strawman_speedup = 0.0;
  double bulk_parallel_speedup = 0.0;       // LFM insert_many omp vs serial
  double bootstrap_parallel_speedup = 0.0;  // mc_threshold omp vs serial
  std::string json() const;
};

BenchReport harness_bench(uint64_t items, uint64_t seed);

// Regenerates the standard charts from the CSV artifacts in a run or sweep
// directory. Throws when the expected CSVs are missing or empty.
void harness_charts(const std::string& dir);

// Per-detector memory footprint rows for the resource-shape comparison.
struct MemoryShapeRow {
  uint64_t distinct_names;
  uint64_t elda_bits_per_prefix;
  uint64_t elda_shared_bits;
  uint64_t freq_bits;
};
std::vector<MemoryShapeRow> harness_memory_shape(const std::vector<uint64_t>& catalogs,
                                                 uint64_t seed);

// Deterministic distinct item universe for accuracy and complexity streams.
std::vector<std::string> make_distinct_items(uint64_t count, uint64_t seed);
// Zipf-popular interest-name stream for insert-path benchmarks.
std::vector<std::string> make_name_stream(uint64_t count, uint64_t seed, double alpha = 0.9,
                                          uint32_t catalog = 10000);

}  // namespace elda
