#pragma once

#include <cstdint>
#include <cstring>
#include <string_view>

namespace elda {

// MurmurHash3 x86_32 (Austin Appleby, public domain).
inline uint32_t murmur3_32(const void* key, size_t len, uint32_t seed) {
  const uint8_t* data = static_cast<const uint8_t*>(key);
  const size_t nblocks = len / 4;
  uint32_t h1 = seed;
  const uint32_t c1 = 0xcc9e2d51u;
  const uint32_t c2 = 0x1b873593u;

  for (size_t i = 0; i < nblocks; i++) {
    uint32_t k1;
    std::memcpy(&k1, data + i * 4, 4);
    k1 *= c1;
    k1 = (k1 << 15) | (k1 >> 17);
    k1 *= c2;
    h1 ^= k1;
    h1 = (h1 << 13) | (h1 >> 19);
    h1 = h1 * 5 + 0xe6546b64u;
  }

  const uint8_t* tail = data + nblocks * 4;
  uint32_t k1 = 0;
  switch (len & 3) {
    case 3: k1 ^= static_cast<uint32_t>(tail[2]) << 16; [[fallthrough]];
    case 2: k1 ^= static_cast<uint32_t>(tail[1]) << 8; [[fallthrough]];
    case 1:
      k1 ^= tail[0];
      k1 *= c1;
      k1 = (k1 << 15) | (k1 >> 17);
      k1 *= c2;
      h1 ^= k1;
  }

  h1 ^= static_cast<uint32_t>(len);
  h1 ^= h1 >> 16;
  h1 *= 0x85ebca6bu;
  h1 ^= h1 >> 13;
  h1 *= 0xc2b2ae35u;
  h1 ^= h1 >> 16;
  return h1;
}

// Keyed L-bit digest of an item, 2 <= l_bits <= 64. One logical hash
// operation per call regardless of internal murmur invocations; the cost
// unit tracked by OpCounter::hash_ops is "digest computations per item".
inline uint64_t digest_bits(std::string_view item, uint32_t l_bits, uint64_t seed) {
  const uint32_t s0 = static_cast<uint32_t>(seed) ^ static_cast<uint32_t>(seed >> 32);
  if (l_bits <= 32) {
    uint32_t h = murmur3_32(item.data(), item.size(), s0);
    return static_cast<uint64_t>(h) >> (32 - l_bits);
  }
  uint64_t hi = murmur3_32(item.data(), item.size(), s0);
  uint64_t lo = murmur3_32(item.data(), item.size(), s0 ^ 0x9e3779b9u);
  uint64_t h = (hi << 32) | lo;
  return h >> (64 - l_bits);
}

// Wide digest for exact-counting containers; collision probability over the
// item volumes used here is negligible.
inline uint64_t digest64(std::string_view item, uint64_t seed) {
  uint64_t hi = murmur3_32(item.data(), item.size(), static_cast<uint32_t>(seed));
  uint64_t lo = murmur3_32(item.data(), item.size(), static_cast<uint32_t>(seed >> 32) ^ 0x632be59bu);
  return (hi << 32) | lo;
}

}  // namespace elda
