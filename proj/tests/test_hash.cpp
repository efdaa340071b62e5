#include <doctest.h>

#include <string>
#include <vector>

#include "elda/hash.hpp"
#include "elda/rng.hpp"

using namespace elda;

TEST_SUITE("hash") {

TEST_CASE("deterministic digests") {
  CHECK(digest_bits("Na", 32, 7) == digest_bits("Na", 32, 7));
  CHECK(digest_bits("/yahoo.com/r17", 8, 1) == digest_bits("/yahoo.com/r17", 8, 1));
  CHECK(digest_bits("x", 32, 1) < (1ULL << 32));
  CHECK(digest_bits("x", 8, 1) < (1ULL << 8));
}

TEST_CASE("murmur3 reference vectors") {
  // Known x86_32 outputs.
  CHECK(murmur3_32("", 0, 0) == 0);
  CHECK(murmur3_32("", 0, 1) == 0x514E28B7u);
  const char* s = "Hello, world!";
  CHECK(murmur3_32(s, 13, 0x9747b28cu) == 0x24884CBAu);
}

TEST_CASE("bit uniformity over random items") {
  const int n = 100000;
  std::vector<int> ones(32, 0);
  for (int i = 0; i < n; ++i) {
    const uint64_t h = digest_bits("uni" + std::to_string(i), 32, 99);
    for (int b = 0; b < 32; ++b) ones[b] += static_cast<int>((h >> b) & 1);
  }
  for (int b = 0; b < 32; ++b) {
    const double freq = static_cast<double>(ones[b]) / n;
    CHECK(freq == doctest::Approx(0.5).epsilon(0.02));  // 0.5 +/- 0.01
  }
}

TEST_CASE("distinct seeds give distinct digests almost always") {
  int collisions = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::string item = "seedy" + std::to_string(i);
    if (digest_bits(item, 32, 1) == digest_bits(item, 32, 2)) ++collisions;
  }
  CHECK(collisions <= 2);
}

}  // TEST_SUITE
