#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "elda/errors.hpp"
#include "elda/pattern_matrix.hpp"

using namespace elda;

namespace {

bool is_permutation_row(std::span<const uint8_t> row, uint32_t m) {
  std::vector<bool> seen(m, false);
  for (uint8_t id : row) {
    if (id >= m || seen[id]) return false;
    seen[id] = true;
  }
  return row.size() == m;
}

}  // namespace

TEST_SUITE("pattern_matrix") {

TEST_CASE("M=4 N=24 yields every permutation exactly once") {
  const auto pm = PatternMatrix::generate(4, 24, 7);
  std::set<std::vector<uint8_t>> rows;
  for (uint32_t i = 0; i < 24; ++i) {
    const auto r = pm.row(i);
    rows.insert(std::vector<uint8_t>(r.begin(), r.end()));
  }
  CHECK(rows.size() == 24);

  std::set<std::vector<uint8_t>> expected;
  std::vector<uint8_t> p = {0, 1, 2, 3};
  do {
    expected.insert(p);
  } while (std::next_permutation(p.begin(), p.end()));
  CHECK(rows == expected);
}

TEST_CASE("M=1 N=1 is the single trivial pattern") {
  const auto pm = PatternMatrix::generate(1, 1, 99);
  REQUIRE(pm.patterns() == 1);
  CHECK(pm.row(0)[0] == 0);
}

TEST_CASE("M=8 N=256: rows are distinct valid permutations") {
  const auto pm = PatternMatrix::generate(8, 256, 0xe1da);
  std::set<std::vector<uint8_t>> rows;
  for (uint32_t i = 0; i < 256; ++i) {
    const auto r = pm.row(i);
    CHECK(is_permutation_row(r, 8));
    rows.insert(std::vector<uint8_t>(r.begin(), r.end()));
  }
  CHECK(rows.size() == 256);
}

TEST_CASE("identical inputs reproduce identical matrices") {
  const auto a = PatternMatrix::generate(8, 64, 5);
  const auto b = PatternMatrix::generate(8, 64, 5);
  for (uint32_t i = 0; i < 64; ++i) {
    const auto ra = a.row(i), rb = b.row(i);
    CHECK(std::equal(ra.begin(), ra.end(), rb.begin()));
  }
  const auto c = PatternMatrix::generate(8, 64, 6);
  bool all_equal = true;
  for (uint32_t i = 0; i < 64; ++i) {
    const auto ra = a.row(i), rc = c.row(i);
    all_equal &= std::equal(ra.begin(), ra.end(), rc.begin());
  }
  CHECK_FALSE(all_equal);
}

TEST_CASE("requesting more patterns than M! fails") {
  CHECK_THROWS_AS(PatternMatrix::generate(3, 7, 1), ConfigError);
  CHECK_NOTHROW(PatternMatrix::generate(3, 6, 1));
}

TEST_CASE("packed storage cost") {
  // 256 patterns x 8 identifiers x 3 bits each.
  CHECK(PatternMatrix::generate(8, 256, 1).storage_bits() == 6144);
}

TEST_CASE("factorial capping") {
  CHECK(factorial_capped(4) == 24);
  CHECK(factorial_capped(8) == 40320);
  CHECK(factorial_capped(25) == (1ULL << 63));
}

}  // TEST_SUITE
