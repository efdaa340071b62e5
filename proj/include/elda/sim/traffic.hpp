#pragma once

#include <cstdint>
#include <string>

#include "elda/sim/topology.hpp"

namespace elda::sim {

// Regular consumers: Poisson interest arrivals at `rate_per_consumer`, names
// drawn from a Zipf(alpha, catalog) popularity law. The sampled rank picks
// both the prefix (ranks striped across the five prefixes) and the content
// identifier.
struct RegularTraffic {
  double rate_per_consumer = 3000.0;
  double zipf_alpha = 0.9;
  uint32_t catalog = 10000;
};

enum class AttackKind { none, lda, fla };

// Compromised consumers send only malicious interests, CBR paced, all under
// one prefix. LDA: never-repeating unpopular names from start_s. FLA: the
// same until nonexistent_start_s, then forged names the producer never
// answers.
struct AttackTraffic {
  AttackKind kind = AttackKind::none;
  double rate_per_attacker = 3000.0;
  std::string prefix = "/yahoo.com";
  double start_s = 2.0;
  double nonexistent_start_s = 3.0;
};

// Name ranges are disjoint by construction: regular ids "r<rank>", unpopular
// attack ids "u<attacker>_<seq>", nonexistent ids "x<attacker>_<seq>".
inline std::string regular_name(uint32_t rank) {
  const auto& prefixes = default_prefixes();
  return prefixes[(rank - 1) % prefixes.size()] + "/r" + std::to_string(rank);
}

inline std::string unpopular_name(const std::string& prefix, uint32_t attacker, uint64_t seq) {
  return prefix + "/u" + std::to_string(attacker) + "_" + std::to_string(seq);
}

inline std::string nonexistent_name(const std::string& prefix, uint32_t attacker, uint64_t seq) {
  return prefix + "/x" + std::to_string(attacker) + "_" + std::to_string(seq);
}

// The producer never answers names whose content identifier is in the
// nonexistent range.
inline bool is_nonexistent_id(std::string_view content_id) {
  return !content_id.empty() && content_id.front() == 'x';
}

}  // namespace elda::sim
