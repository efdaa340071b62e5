#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "elda/lfm_sketch.hpp"
#include "elda/rng.hpp"
#include "test_util.hpp"

using namespace elda;
using namespace elda::testing;

namespace {

SketchConfig small_config() {
  SketchConfig cfg;
  cfg.l_bits = 8;
  cfg.m_substrings = 4;
  cfg.n_patterns = 24;
  return cfg;
}

uint32_t find_row(const PatternMatrix& pm, const std::vector<uint8_t>& want) {
  for (uint32_t i = 0; i < pm.patterns(); ++i) {
    const auto r = pm.row(i);
    if (std::equal(r.begin(), r.end(), want.begin(), want.end())) return i;
  }
  REQUIRE(false);
  return 0;
}

}  // namespace

TEST_SUITE("lfm_sketch") {

TEST_CASE("worked 8-bit example: split, index set, scan counting") {
  // 00110110 -> substrings 00, 11, 01, 10 -> indices {-1, 0, 1, 0}
  OpCounter ops;
  const IndexSet ix = split_and_index(0b00110110, 8, 4, &ops);
  CHECK(ix.idx[0] == -1);
  CHECK(ix.idx[1] == 0);
  CHECK(ix.idx[2] == 1);
  CHECK(ix.idx[3] == 0);
  // Scans: empty substring costs its width, others index + 1.
  CHECK(ops.substring_scans == 2 + 1 + 2 + 1);
}

TEST_CASE("worked 8-bit example: pattern ACDB finds index 3") {
  OpCounter ops;
  const IndexSet ix = split_and_index(0b00110110, 8, 4, &ops);
  const std::vector<uint8_t> acdb = {0, 2, 3, 1};
  const auto k = permuted_leftmost_one(ix, acdb, 2, &ops);
  REQUIRE(k.has_value());
  CHECK(*k == 3);
  // One offset-accumulating hop over the empty substring A.
  CHECK(ops.pattern_steps == 1);
}

TEST_CASE("all-zero hash yields an empty index set and no position") {
  const IndexSet ix = split_and_index(0, 8, 4, nullptr);
  for (int j = 0; j < 4; ++j) CHECK(ix.idx[j] == -1);
  const std::vector<uint8_t> abcd = {0, 1, 2, 3};
  CHECK_FALSE(permuted_leftmost_one(ix, abcd, 2, nullptr).has_value());
}

TEST_CASE("split matches the naive per-substring scan oracle") {
  Rng rng(11);
  for (int trial = 0; trial < 20000; ++trial) {
    const uint64_t h = rng.next() >> 32;  // 32-bit value
    const IndexSet ix = split_and_index(h, 32, 8, nullptr);
    const auto want = split_oracle(h, 32, 8);
    for (int j = 0; j < 8; ++j) CHECK(ix.idx[j] == want[j]);
  }
}

TEST_CASE("exhaustive oracle equivalence at L=8 M=4") {
  const auto pm = PatternMatrix::generate(4, 24, 3);
  for (uint32_t h = 0; h < 256; ++h) {
    const IndexSet ix = split_and_index(h, 8, 4, nullptr);
    for (uint32_t p = 0; p < 24; ++p) {
      const auto got = permuted_leftmost_one(ix, pm.row(p), 2, nullptr);
      const auto want = materialized_leftmost_one(h, 8, 4, pm.row(p));
      CHECK(got == want);
    }
  }
}

TEST_CASE("randomized oracle equivalence at L=32 M=8") {
  const auto pm = PatternMatrix::generate(8, 256, 0xe1da);
  Rng rng(17);
  for (int trial = 0; trial < 20000; ++trial) {
    const uint64_t h = rng.next() >> 32;
    const IndexSet ix = split_and_index(h, 32, 8, nullptr);
    const uint32_t p = static_cast<uint32_t>(rng.below(256));
    CHECK(permuted_leftmost_one(ix, pm.row(p), 4, nullptr) ==
          materialized_leftmost_one(h, 32, 8, pm.row(p)));
  }
}

TEST_CASE("worked example insert sets the fourth bit of the ACDB bitmap") {
  LfmSketch sk(small_config());
  const uint32_t row = find_row(sk.patterns(), {0, 2, 3, 1});
  sk.insert_digest(0b00110110);
  CHECK(((sk.bitmap_word(row) >> (63 - 3)) & 1) == 1);
  CHECK(sk.insert_count() == 1);
}

TEST_CASE("duplicate insertion leaves the sketch unchanged") {
  SketchConfig cfg;
  LfmSketch once(cfg), twice(cfg);
  once.insert("Na");
  twice.insert("Na");
  twice.insert("Na");
  CHECK(once.state_equal(LfmSketch(cfg)) == false);
  CHECK(twice.bitmap_word(0) == once.bitmap_word(0));
  std::vector<uint32_t> a = once.register_values(), b = twice.register_values();
  CHECK(a == b);
}

TEST_CASE("sketch state is the OR of single-item sketches") {
  SketchConfig cfg;
  LfmSketch all(cfg), a(cfg), b(cfg), c(cfg);
  all.insert("a");
  all.insert("b");
  all.insert("c");
  a.insert("a");
  b.insert("b");
  c.insert("c");
  for (uint32_t i = 0; i < cfg.n_patterns; ++i) {
    CHECK(all.bitmap_word(i) == (a.bitmap_word(i) | b.bitmap_word(i) | c.bitmap_word(i)));
  }
}

TEST_CASE("leftmost_zero") {
  CHECK(leftmost_zero(0, 32) == 0);
  // 1110... (bit 0..2 set)
  const uint64_t reg = (1ULL << 63) | (1ULL << 62) | (1ULL << 61);
  CHECK(leftmost_zero(reg, 32) == 3);
  // Saturated register returns L.
  uint64_t full = 0;
  for (int b = 0; b < 16; ++b) full |= 1ULL << (63 - b);
  CHECK(leftmost_zero(full, 16) == 16);

  Rng rng(5);
  for (int t = 0; t < 5000; ++t) {
    uint64_t word = 0;
    std::vector<int> bits;
    for (int b = 0; b < 32; ++b) {
      const int bit = static_cast<int>(rng.below(2));
      bits.push_back(bit);
      if (bit) word |= 1ULL << (63 - b);
    }
    CHECK(leftmost_zero(word, 32) == leftmost_zero_oracle(bits));
  }
}

TEST_CASE("monotone registers under stream extension") {
  SketchConfig cfg;
  LfmSketch small(cfg), big(cfg);
  const auto items = [&] {
    std::vector<std::string> v;
    for (int i = 0; i < 400; ++i) v.push_back("it" + std::to_string(i));
    return v;
  }();
  for (int i = 0; i < 200; ++i) small.insert(items[i]);
  for (int i = 0; i < 400; ++i) big.insert(items[i]);
  const auto rs = small.register_values(), rb = big.register_values();
  for (size_t i = 0; i < rs.size(); ++i) CHECK(rs[i] <= rb[i]);
}

TEST_CASE("insertion order and duplicates do not change the state") {
  SketchConfig cfg;
  std::vector<std::string> set;
  for (int i = 0; i < 300; ++i) set.push_back("x" + std::to_string(i));
  std::vector<std::string> multiset = set;
  multiset.insert(multiset.end(), set.begin(), set.begin() + 100);
  Rng rng(23);
  for (size_t i = multiset.size(); i > 1; --i) {
    std::swap(multiset[i - 1], multiset[rng.index(i)]);
  }
  LfmSketch a(cfg), b(cfg);
  for (const auto& s : set) a.insert(s);
  for (const auto& s : multiset) b.insert(s);
  for (uint32_t i = 0; i < cfg.n_patterns; ++i) CHECK(a.bitmap_word(i) == b.bitmap_word(i));
}

TEST_CASE("one hash per insert, exactly") {
  SketchConfig cfg;
  LfmSketch sk(cfg);
  for (int i = 0; i < 1234; ++i) sk.insert("item" + std::to_string(i % 400));
  CHECK(sk.ops().hash_ops == sk.insert_count());
  CHECK(sk.insert_count() == 1234);
}

TEST_CASE("empty sketch estimate uses the register guard") {
  SketchConfig cfg;
  LfmSketch sk(cfg);
  CHECK(sk.raw_h() == doctest::Approx(1.0));
  CHECK(sk.estimate() == doctest::Approx(2.0 * kLfmCalibration));
  CHECK(sk.insert_count() == 0);  // the detector maps this case to 0
}

TEST_CASE("reset restores a fresh sketch and keeps the pattern matrix") {
  SketchConfig cfg;
  LfmSketch sk(cfg);
  const auto* patterns_before = &sk.patterns();
  for (int i = 0; i < 500; ++i) sk.insert("y" + std::to_string(i));
  sk.reset();
  CHECK(sk.insert_count() == 0);
  CHECK(sk.ops().hash_ops == 0);
  for (uint32_t i = 0; i < cfg.n_patterns; ++i) CHECK(sk.bitmap_word(i) == 0);
  CHECK(&sk.patterns() == patterns_before);

  LfmSketch fresh(cfg, sk.patterns_ptr());
  for (int i = 0; i < 500; ++i) {
    sk.insert("z" + std::to_string(i));
    fresh.insert("z" + std::to_string(i));
  }
  CHECK(sk.state_equal(fresh));
}

TEST_CASE("memory footprint") {
  SketchConfig cfg;  // N=256, L=32
  CHECK(LfmSketch(cfg).register_bits() == 8192);

  SketchConfig tiny;
  tiny.l_bits = 8;
  tiny.m_substrings = 4;
  tiny.n_patterns = 1;
  CHECK(LfmSketch(tiny).register_bits() == 8);
}

TEST_CASE("cost bound on the insert path (short stream)") {
  SketchConfig cfg;
  LfmSketch sk(cfg);
  const int n = 50000;
  for (int i = 0; i < n; ++i) sk.insert("cost" + std::to_string(i));
  const double per_insert = static_cast<double>(sk.ops().scan_and_step_total()) / n;
  const double bound =
      cfg.m_substrings * (2.0 - std::pow(0.5, cfg.substring_width() - 1.0)) + cfg.n_patterns;
  CHECK(per_insert <= bound);
}

TEST_CASE("serialization round trip") {
  SketchConfig cfg;
  cfg.l_bits = 16;
  cfg.m_substrings = 4;
  cfg.n_patterns = 12;
  LfmSketch sk(cfg);
  for (int i = 0; i < 100; ++i) sk.insert("s" + std::to_string(i));
  std::stringstream ss;
  sk.serialize(ss);
  LfmSketch back = LfmSketch::deserialize(ss);
  CHECK(back.state_equal(sk));
  CHECK(back.raw_h() == sk.raw_h());

  std::stringstream again;
  back.serialize(again);
  CHECK(again.str() == ss.str());
}

TEST_CASE("config validation") {
  SketchConfig bad;
  bad.l_bits = 33;  // not divisible by 8
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = SketchConfig{};
  bad.m_substrings = 32;  // width 1 < 2
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = SketchConfig{};
  bad.l_bits = 8;
  bad.m_substrings = 4;
  bad.n_patterns = 25;  // > 4!
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

}  // TEST_SUITE
