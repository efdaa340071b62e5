#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "elda/errors.hpp"
#include "elda/threshold.hpp"

using namespace elda;

TEST_SUITE("threshold") {

TEST_CASE("defaults match the evaluation setup") {
  ThresholdConfig cfg;
  CHECK(cfg.alpha == 0.005);
  CHECK(cfg.sample_size == 10);
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("history window keeps the most recent n entries") {
  MonitorHistory h(3);
  h.push(1);
  h.push(2);
  h.push(3);
  CHECK(h.full());
  h.push(4);
  const auto v = h.values();
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 2);
  CHECK(v[2] == 4);
}

TEST_CASE("bootstrap resample of a constant window is constant") {
  std::vector<double> window(10, 3.25);
  Rng rng(1);
  const auto r = bootstrap_resample(window, 10, rng);
  REQUIRE(r.size() == 10);
  for (double v : r) CHECK(v == 3.25);
}

TEST_CASE("bootstrap resample is deterministic under a fixed seed") {
  std::vector<double> window = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  Rng a(42), b(42);
  CHECK(bootstrap_resample(window, 10, a) == bootstrap_resample(window, 10, b));
}

TEST_CASE("bootstrap resample draws uniformly with replacement") {
  std::vector<double> window = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  Rng rng(7);
  std::vector<int> counts(10, 0);
  const int resamples = 10000;
  for (int r = 0; r < resamples; ++r) {
    for (double v : bootstrap_resample(window, 10, rng)) ++counts[static_cast<int>(v)];
  }
  const double total = resamples * 10.0;
  const double p = 0.1;
  const double sigma = std::sqrt(total * p * (1 - p));
  for (int c : counts) CHECK(std::fabs(c - total * p) <= 3 * sigma);
}

TEST_CASE("empty history is an error") {
  std::vector<double> empty;
  Rng rng(3);
  CHECK_THROWS_AS(bootstrap_resample(empty, 10, rng), InsufficientHistory);
  ThresholdConfig cfg;
  std::vector<double> one = {5.0};
  CHECK_THROWS_AS(mc_threshold(one, cfg), InsufficientHistory);
}

TEST_CASE("non-finite entries are rejected") {
  ThresholdConfig cfg;
  std::vector<double> bad = {1.0, std::nan(""), 2.0, 1.5, 1.2, 1.1, 0.9, 1.3, 1.4, 1.0};
  CHECK_THROWS(mc_threshold(bad, cfg));
}

TEST_CASE("too few resamples for the significance level is a config error") {
  ThresholdConfig cfg;
  cfg.alpha = 0.005;
  cfg.resamples = 100;  // < 1/alpha
  std::vector<double> w = {1, 2};
  CHECK_THROWS_AS(mc_threshold(w, cfg), ConfigError);
}

TEST_CASE("constant window returns mean * (1 + epsilon) and never self-triggers") {
  ThresholdConfig cfg;
  std::vector<double> window(10, 42.0);
  const double thr = mc_threshold(window, cfg);
  CHECK(thr == doctest::Approx(42.0 * (1.0 + cfg.epsilon)));
  CHECK_FALSE(42.0 > thr);  // statistic == historical value stays quiet
}

TEST_CASE("threshold dominates the bootstrap-mean upper percentile") {
  // Window drawn once from uniform(0,1).
  std::vector<double> window = {0.13, 0.77, 0.45, 0.91, 0.08, 0.55, 0.62, 0.30, 0.84, 0.21};
  ThresholdConfig cfg;
  cfg.rng_seed = 4242;
  const double thr = mc_threshold(window, cfg);

  // Independent simulation of the bootstrap distribution of the mean.
  Rng rng(777);
  std::vector<double> means;
  for (int r = 0; r < 20000; ++r) {
    double s = 0;
    for (int i = 0; i < 10; ++i) s += window[rng.index(window.size())];
    means.push_back(s / 10.0);
  }
  std::sort(means.begin(), means.end());
  const double pct995 = means[static_cast<size_t>(0.995 * means.size())];
  CHECK(thr >= pct995);

  double mean = 0;
  for (double v : window) mean += v;
  mean /= window.size();
  CHECK(thr >= mean);
}

TEST_CASE("smaller significance never lowers the threshold") {
  std::vector<double> window = {10.2, 9.8, 10.5, 10.0, 9.9, 10.1, 10.3, 9.7, 10.4, 10.0};
  ThresholdConfig strict, lax;
  strict.alpha = 0.005;
  lax.alpha = 0.05;
  strict.rng_seed = lax.rng_seed = 99;
  CHECK(mc_threshold(window, strict) >= mc_threshold(window, lax));
}

TEST_CASE("scale equivariance") {
  std::vector<double> window = {3.0, 2.2, 2.9, 3.4, 2.8, 3.1, 2.7, 3.3, 2.6, 3.0};
  ThresholdConfig cfg;
  cfg.rng_seed = 5;
  const double base = mc_threshold(window, cfg);
  for (double s : {0.01, 7.0, 1234.5}) {
    std::vector<double> scaled = window;
    for (double& v : scaled) v *= s;
    CHECK(mc_threshold(scaled, cfg) == doctest::Approx(base * s).epsilon(1e-9));
  }
  // The zero-variance branch is multiplicative by construction.
  std::vector<double> flat(10, 4.0);
  CHECK(mc_threshold(flat, cfg) * 3.0 ==
        doctest::Approx(mc_threshold(std::vector<double>(10, 12.0), cfg)));
}

TEST_CASE("parallel bootstrap equals the serial reference") {
  std::vector<double> window = {5.5, 6.1, 5.8, 6.0, 5.9, 6.2, 5.7, 6.3, 5.6, 6.05};
  ThresholdConfig cfg;
  cfg.rng_seed = 31337;
  CHECK(mc_threshold(window, cfg, false) == mc_threshold(window, cfg, true));
}

TEST_CASE("stationary false-alarm rate stays within twice the significance") {
  // Gaussian-ish stationary statistics through the full window/threshold
  // protocol, alarm epochs excluded from the window.
  ThresholdConfig cfg;
  cfg.rng_seed = 2024;
  MonitorHistory hist(cfg.sample_size);
  Rng rng(510);
  auto draw = [&] {
    double s = 0;
    for (int i = 0; i < 12; ++i) s += rng.uniform01();
    return 100.0 + (s - 6.0) * 3.0;  // mean 100, sd ~3
  };
  int alarms = 0;
  const int epochs = 2500;
  std::optional<double> thr;
  for (int e = 0; e < epochs; ++e) {
    const double stat = draw();
    if (thr && stat > *thr) {
      ++alarms;
    } else {
      hist.push(stat);
      if (hist.full()) {
        ThresholdConfig tc = cfg;
        tc.rng_seed = mix_seed(cfg.rng_seed, e);
        thr = mc_threshold(hist.values(), tc);
      }
    }
  }
  CHECK(static_cast<double>(alarms) / epochs <= 2.0 * cfg.alpha);
}

}  // TEST_SUITE
