#include <doctest.h>

#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include "elda/baselines.hpp"
#include "elda/lfm_sketch.hpp"
#include "elda/rng.hpp"

using namespace elda;

TEST_SUITE("baselines") {

TEST_CASE("N=1 degenerates to a classic single-register FM sketch") {
  HllFmSketch sk(32, 1, 77);
  sk.insert("alpha");
  sk.insert("beta");
  CHECK(sk.insert_count() == 2);
  CHECK(sk.ops().hash_ops == 2);
  // The register's set bits are exactly the leftmost-1 indices of the two
  // hash values.
  CHECK(sk.register_value(0) <= 32);
}

TEST_CASE("duplicate insertion is idempotent on state") {
  HllFmSketch a(32, 16, 3), b(32, 16, 3);
  a.insert("dup");
  b.insert("dup");
  b.insert("dup");
  for (uint32_t i = 0; i < 16; ++i) CHECK(a.register_value(i) == b.register_value(i));
}

TEST_CASE("N hashes per insert, exactly") {
  HllFmSketch sk(32, 256, 12);
  for (int i = 0; i < 1000; ++i) sk.insert("h" + std::to_string(i));
  CHECK(sk.ops().hash_ops == 1000ull * 256);
}

TEST_CASE("mean scan cost approaches N * (2 - (1/2)^(L-1))") {
  const uint32_t n = 64;
  HllFmSketch sk(32, n, 5);
  const int inserts = 20000;
  std::vector<std::string> items;
  for (int i = 0; i < inserts; ++i) items.push_back("scan" + std::to_string(i));
  sk.insert_many(items);
  const double per_insert = static_cast<double>(sk.ops().substring_scans) / inserts;
  const double expect = n * (2.0 - std::pow(0.5, 31.0));
  CHECK(per_insert == doctest::Approx(expect).epsilon(0.05));
}

TEST_CASE("empty sketch estimates zero") {
  HllFmSketch sk(32, 64, 5);
  CHECK(sk.estimate() == 0.0);
}

TEST_CASE("stream permutation leaves registers invariant") {
  std::vector<std::string> items;
  for (int i = 0; i < 500; ++i) items.push_back("p" + std::to_string(i));
  std::vector<std::string> shuffled = items;
  Rng rng(9);
  for (size_t i = shuffled.size(); i > 1; --i) std::swap(shuffled[i - 1], shuffled[rng.index(i)]);
  HllFmSketch a(32, 32, 4), b(32, 32, 4);
  for (const auto& s : items) a.insert(s);
  for (const auto& s : shuffled) b.insert(s);
  for (uint32_t i = 0; i < 32; ++i) CHECK(a.register_value(i) == b.register_value(i));
}

TEST_CASE("exact counter follows set semantics") {
  ExactCounter c;
  c.insert("a");
  c.insert("a");
  c.insert("b");
  CHECK(c.count() == 2);
  c.reset();
  for (int i = 0; i < 10000; ++i) c.insert("d" + std::to_string(i));
  CHECK(c.count() == 10000);
}

TEST_CASE("frequency baseline stays quiet on stationary traffic") {
  FrequencyBaseline fb({1000, 3.0, 3});
  Rng rng(31);
  for (int epoch = 0; epoch < 20; ++epoch) {
    for (int i = 0; i < 50; ++i) {
      // Every content requested about 4 times per epoch.
      fb.observe("c" + std::to_string(i));
      fb.observe("c" + std::to_string(i));
      fb.observe("c" + std::to_string(static_cast<int>(rng.below(50))));
      fb.observe("c" + std::to_string(static_cast<int>(rng.below(50))));
    }
    const auto alarms = fb.end_epoch();
    if (epoch >= 10) CHECK(alarms.empty());
  }
}

TEST_CASE("frequency baseline flags a 10x jump") {
  FrequencyBaseline fb({1000, 3.0, 3});
  for (int epoch = 0; epoch < 10; ++epoch) {
    for (int i = 0; i < 20; ++i) {
      for (int k = 0; k < 5 + (i + epoch) % 2; ++k) fb.observe("c" + std::to_string(i));
    }
    CHECK(fb.end_epoch().empty());
  }
  for (int k = 0; k < 55; ++k) fb.observe("c7");
  for (int i = 0; i < 20; ++i) {
    if (i == 7) continue;
    for (int k = 0; k < 5; ++k) fb.observe("c" + std::to_string(i));
  }
  const auto alarms = fb.end_epoch();
  REQUIRE(alarms.size() == 1);
  CHECK(alarms[0].content == "c7");
  CHECK(alarms[0].count > alarms[0].threshold);
}

TEST_CASE("frequency baseline evicts least-recently-observed at capacity") {
  FrequencyBaseline fb({10, 3.0, 3});
  for (int i = 0; i < 10; ++i) fb.observe("keep" + std::to_string(i));
  fb.observe("keep0");  // refresh
  fb.observe("new");    // evicts keep1, the stalest
  CHECK(fb.tracked_contents() == 10);
  CHECK(fb.evictions() == 1);
}

TEST_CASE("frequency baseline memory grows with distinct contents, sketches stay flat") {
  FrequencyBaseline small({100000, 3.0, 3}), large({100000, 3.0, 3});
  for (int i = 0; i < 1000; ++i) small.observe("m" + std::to_string(i));
  for (int i = 0; i < 10000; ++i) large.observe("m" + std::to_string(i));
  CHECK(large.footprint_bits() > 5 * small.footprint_bits());

  SketchConfig cfg;
  LfmSketch a(cfg), b(cfg);
  for (int i = 0; i < 1000; ++i) a.insert("m" + std::to_string(i));
  for (int i = 0; i < 10000; ++i) b.insert("m" + std::to_string(i));
  CHECK(a.register_bits() == b.register_bits());
}

}  // TEST_SUITE
