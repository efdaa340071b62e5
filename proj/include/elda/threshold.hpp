#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "elda/rng.hpp"

namespace elda {

// Sliding window of the most recent per-epoch monitoring statistics for one
// prefix.
class MonitorHistory {
 public:
  explicit MonitorHistory(size_t capacity) : capacity_(capacity) {}

  void push(double v);
  bool full() const { return window_.size() >= capacity_; }
  size_t size() const { return window_.size(); }
  size_t capacity() const { return capacity_; }
  std::span<const double> values() const { return window_; }
  void clear() { window_.clear(); }

 private:
  size_t capacity_;
  std::vector<double> window_;  // oldest first
};

struct ThresholdConfig {
  double alpha = 0.005;        // significance level
  uint32_t sample_size = 10;   // history window capacity n
  uint32_t resamples = 1000;   // bootstrap resample count B
  double growth_step = 0.5;    // candidate grows by growth_step * sigma per round
  double epsilon = 0.05;       // relative margin for the zero-variance window
  uint64_t rng_seed = 0;

  void validate() const;  // 0 < alpha < 1, B >= 1/alpha
};

// One bootstrap resample: n uniform draws with replacement from the window.
// Throws InsufficientHistory on an empty window.
std::vector<double> bootstrap_resample(std::span<const double> window, size_t n, Rng& rng);

// Monte-Carlo bootstrap threshold for CPA detection. Candidate thresholds
// start at mean + sigma and grow by growth_step * sigma until at most an
// alpha fraction of bootstrap upper-bound statistics reaches the candidate.
// The per-resample statistic is the resample's concentration upper bound
// mean_r + sd_r / sqrt(alpha); see the README's detection notes.
// A zero-variance window short-circuits to mean * (1 + epsilon).
// Deterministic under a fixed cfg.rng_seed; parallel == serial bit-exactly.
double mc_threshold(std::span<const double> window, const ThresholdConfig& cfg,
                    bool parallel = false);

}  // namespace elda
