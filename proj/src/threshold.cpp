#include "elda/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "elda/errors.hpp"

namespace elda {

void MonitorHistory::push(double v) {
  if (window_.size() >= capacity_) window_.erase(window_.begin());
  window_.push_back(v);
}

void ThresholdConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("significance must be in (0, 1)");
  if (static_cast<double>(resamples) < 1.0 / alpha) {
    throw ConfigError("resample count too small to resolve the significance level");
  }
  if (sample_size < 2) throw ConfigError("sample size must be at least 2");
  if (growth_step <= 0.0) throw ConfigError("growth step must be positive");
}

std::vector<double> bootstrap_resample(std::span<const double> window, size_t n, Rng& rng) {
  if (window.empty()) throw InsufficientHistory("bootstrap needs at least one observation");
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i) out[i] = window[rng.index(window.size())];
  return out;
}

namespace {

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

MeanSd mean_sd(std::span<const double> xs) {
  MeanSd r;
  for (double x : xs) r.mean += x;
  r.mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return r;
  double ss = 0.0;
  for (double x : xs) ss += (x - r.mean) * (x - r.mean);
  r.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return r;
}

}  // namespace

double mc_threshold(std::span<const double> window, const ThresholdConfig& cfg, bool parallel) {
  cfg.validate();
  if (window.size() < 2) {
    throw InsufficientHistory("threshold needs at least two observations");
  }
  for (double v : window) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite monitoring statistic");
  }

  const MeanSd w = mean_sd(window);
  if (w.sd == 0.0) return w.mean * (1.0 + cfg.epsilon);

  // Bootstrap distribution of the concentration upper bound. Each resample
  // gets its own derived seed so thread scheduling cannot change the result.
  const double k = 1.0 / std::sqrt(cfg.alpha);
  const uint32_t b = cfg.resamples;
  std::vector<double> stats(b);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (uint32_t r = 0; r < b; ++r) {
    Rng rng(mix_seed(cfg.rng_seed, r));
    const auto resample = bootstrap_resample(window, window.size(), rng);
    const MeanSd s = mean_sd(resample);
    stats[r] = s.mean + k * s.sd;
  }
  std::sort(stats.begin(), stats.end());

  auto tail_fraction = [&](double candidate) {
    const auto it = std::lower_bound(stats.begin(), stats.end(), candidate);
    return static_cast<double>(stats.end() - it) / static_cast<double>(b);
  };

  double candidate = w.mean + w.sd;
  while (tail_fraction(candidate) > cfg.alpha) {
    candidate += cfg.growth_step * w.sd;
  }
  return candidate;
}

}  // namespace elda
