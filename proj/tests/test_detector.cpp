#include <doctest.h>

#include <string>
#include <vector>

#include "elda/baselines.hpp"
#include "elda/detector.hpp"
#include "elda/rng.hpp"
#include "elda/sim/zipf.hpp"

using namespace elda;

namespace {

DetectorConfig test_config() {
  DetectorConfig cfg;
  cfg.threshold.rng_seed = 99;
  return cfg;
}

// Stationary per-epoch feed: `rate` draws from a fixed Zipf catalog under
// each of the five prefixes.
void feed_regular_epoch(Detector& det, const sim::ZipfSampler& zipf, Rng& rng, int draws) {
  for (int i = 0; i < draws; ++i) {
    det.observe_interest(sim::regular_name(zipf.sample(rng)));
  }
}

}  // namespace

TEST_SUITE("detector") {

TEST_CASE("interests route to the monitor for their first component") {
  Detector det(test_config());
  det.observe_interest("/yahoo.com/12345");
  CHECK(det.monitor_count() == 1);
  det.observe_interest("/yahoo.com/777");
  CHECK(det.monitor_count() == 1);
  det.observe_interest("/google.com/1");
  CHECK(det.monitor_count() == 2);
  const auto alarms = det.end_epoch(1.0);
  CHECK(alarms.empty());
  REQUIRE(det.trace().size() == 2);
  CHECK(det.trace()[0].prefix == "/yahoo.com");
  CHECK(det.trace()[1].prefix == "/google.com");
}

TEST_CASE("duplicate full names do not move the statistic") {
  Detector once(test_config()), many(test_config());
  once.observe_interest("/google.com/r1");
  for (int i = 0; i < 1000; ++i) many.observe_interest("/google.com/r1");
  once.end_epoch(1.0);
  many.end_epoch(1.0);
  CHECK(once.trace()[0].statistic == many.trace()[0].statistic);
}

TEST_CASE("per-prefix isolation against exact counters") {
  Detector det(test_config());
  std::vector<ExactCounter> exact(5);
  Rng rng(404);
  const auto& prefixes = sim::default_prefixes();
  for (int i = 0; i < 40000; ++i) {
    const size_t p = rng.index(5);
    const std::string name =
        prefixes[p] + "/n" + std::to_string(rng.below(200 + 400 * p));
    det.observe_interest(name);
    exact[p].insert(name);
  }
  det.end_epoch(1.0);
  REQUIRE(det.trace().size() == 5);
  for (const auto& row : det.trace()) {
    size_t p = 0;
    while (prefixes[p] != row.prefix) ++p;
    const double truth = static_cast<double>(exact[p].count());
    CHECK(row.statistic == doctest::Approx(truth).epsilon(0.25));
  }
}

TEST_CASE("no alarms while learning, detection within one epoch of onset") {
  DetectorConfig cfg = test_config();
  Detector det(cfg);
  sim::ZipfSampler zipf(0.9, 2000);
  Rng rng(5150);

  std::vector<Alarm> all;
  for (int epoch = 0; epoch < 15; ++epoch) {
    feed_regular_epoch(det, zipf, rng, 3000);
    const auto alarms = det.end_epoch(epoch + 1.0);
    for (const auto& a : alarms) all.push_back(a);
  }
  CHECK(all.empty());
  CHECK(det.current_threshold("/yahoo.com").has_value());

  // Attack epoch: 9000 additional distinct names under /yahoo.com.
  feed_regular_epoch(det, zipf, rng, 3000);
  for (int i = 0; i < 9000; ++i) {
    det.observe_interest(sim::unpopular_name("/yahoo.com", 2, i));
  }
  const auto alarms = det.end_epoch(16.0);
  REQUIRE(alarms.size() == 1);
  CHECK(alarms[0].prefix == "/yahoo.com");
  CHECK(alarms[0].statistic > alarms[0].threshold);
  CHECK(alarms[0].wall_time == 16.0);
}

TEST_CASE("alarm epochs do not poison the window; threshold freezes under attack") {
  DetectorConfig cfg = test_config();
  Detector det(cfg);
  sim::ZipfSampler zipf(0.9, 2000);
  Rng rng(616);
  for (int epoch = 0; epoch < 14; ++epoch) {
    feed_regular_epoch(det, zipf, rng, 3000);
    det.end_epoch(epoch + 1.0);
  }
  const double thr_before = *det.current_threshold("/yahoo.com");
  int alarm_epochs = 0;
  for (int epoch = 14; epoch < 24; ++epoch) {
    feed_regular_epoch(det, zipf, rng, 3000);
    for (int i = 0; i < 9000; ++i) {
      det.observe_interest(sim::unpopular_name("/yahoo.com", 2, epoch * 100000 + i));
    }
    alarm_epochs += static_cast<int>(!det.end_epoch(epoch + 1.0).empty());
  }
  CHECK(alarm_epochs == 10);  // sustained detection, every epoch
  CHECK(*det.current_threshold("/yahoo.com") == thr_before);
}

TEST_CASE("epoch determinism") {
  auto run_once = [] {
    Detector det(test_config());
    sim::ZipfSampler zipf(0.7, 1000);
    Rng rng(8080);
    std::vector<EpochTraceRow> trace;
    for (int epoch = 0; epoch < 20; ++epoch) {
      feed_regular_epoch(det, zipf, rng, 2000);
      det.end_epoch(epoch + 1.0);
    }
    return det.trace();
  };
  const auto a = run_once(), b = run_once();
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].statistic == b[i].statistic);
    CHECK(a[i].threshold == b[i].threshold);
    CHECK(a[i].alarm == b[i].alarm);
  }
}

TEST_CASE("strawman backend detects the same way") {
  DetectorConfig cfg = test_config();
  cfg.backend = SketchBackend::hll_fm;
  Detector det(cfg);
  sim::ZipfSampler zipf(0.9, 2000);
  Rng rng(321);
  for (int epoch = 0; epoch < 14; ++epoch) {
    feed_regular_epoch(det, zipf, rng, 3000);
    CHECK(det.end_epoch(epoch + 1.0).empty());
  }
  feed_regular_epoch(det, zipf, rng, 3000);
  for (int i = 0; i < 9000; ++i) {
    det.observe_interest(sim::unpopular_name("/yahoo.com", 4, i));
  }
  CHECK(det.end_epoch(15.0).size() == 1);
}

TEST_CASE("score_run ratios") {
  std::vector<AttackInterval> schedule = {{"/yahoo.com", 2.0, 60.0}};
  std::vector<Alarm> alarms = {{"/yahoo.com", 3, 100.0, 50.0, 3.0}};
  auto rep = Detector::score_run(alarms, schedule);
  REQUIRE(rep.detection_rate.has_value());
  CHECK(*rep.detection_rate == 1.0);
  CHECK(rep.false_positive_rate == 0.0);

  // Degenerate: no attacks, two alarms.
  rep = Detector::score_run({{"/google.com", 1, 5, 4, 1.0}, {"/google.com", 2, 5, 4, 2.0}}, {});
  CHECK_FALSE(rep.detection_rate.has_value());
  CHECK(rep.false_positive_rate == 1.0);

  // Alarm on the right prefix outside the interval is a false positive.
  rep = Detector::score_run({{"/yahoo.com", 0, 5, 4, 1.0}}, schedule);
  CHECK(*rep.detection_rate == 0.0);
  CHECK(rep.false_positives == 1);
}

TEST_CASE("state footprint: constant per prefix plus one shared matrix") {
  Detector det(test_config());
  CHECK(det.per_prefix_state_bits() == 256 * 32);
  CHECK(det.shared_state_bits() == 6144);
  for (int i = 0; i < 1000; ++i) det.observe_interest("/google.com/g" + std::to_string(i));
  const auto bits_1k = det.total_state_bits();
  for (int i = 0; i < 9000; ++i) det.observe_interest("/google.com/h" + std::to_string(i));
  CHECK(det.total_state_bits() == bits_1k);  // distinct names do not grow state
  det.observe_interest("/amazon.com/a1");
  CHECK(det.total_state_bits() == bits_1k + det.per_prefix_state_bits());
}

}  // TEST_SUITE
