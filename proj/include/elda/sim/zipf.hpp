#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "elda/errors.hpp"
#include "elda/rng.hpp"

namespace elda::sim {

// Zipf(alpha, K): P(rank = i) = i^-alpha / sum_j j^-alpha, sampled by CDF
// inversion so the empirical law matches the analytic one exactly.
class ZipfSampler {
 public:
  ZipfSampler(double alpha, uint32_t k) : alpha_(alpha), k_(k) {
    if (alpha <= 0.0) throw ConfigError("zipf exponent must be positive");
    if (k == 0) throw ConfigError("zipf catalog must be non-empty");
    cdf_.resize(k);
    double acc = 0.0;
    for (uint32_t i = 1; i <= k; ++i) {
      acc += std::pow(static_cast<double>(i), -alpha);
      cdf_[i - 1] = acc;
    }
    norm_ = acc;
    for (double& c : cdf_) c /= norm_;
    cdf_.back() = 1.0;
  }

  // Rank in [1, K].
  uint32_t sample(Rng& rng) const {
    const double u = rng.uniform01();
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<uint32_t>(it - cdf_.begin()) + 1;
  }

  double pmf(uint32_t rank) const {
    return std::pow(static_cast<double>(rank), -alpha_) / norm_;
  }
  double cdf(uint32_t rank) const { return cdf_[rank - 1]; }
  double normalization() const { return norm_; }
  uint32_t catalog() const { return k_; }

 private:
  double alpha_;
  uint32_t k_;
  double norm_;
  std::vector<double> cdf_;
};

}  // namespace elda::sim
