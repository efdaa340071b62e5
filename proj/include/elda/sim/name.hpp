#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace elda::sim {

// Hierarchical content name, e.g. "/yahoo.com/r123". The first component is
// the routing/monitoring prefix.
struct Name {
  std::string full;

  std::string_view prefix() const {
    std::string_view sv(full);
    if (!sv.empty() && sv.front() == '/') {
      const size_t next = sv.find('/', 1);
      return next == std::string_view::npos ? sv : sv.substr(0, next);
    }
    const size_t next = sv.find('/');
    return next == std::string_view::npos ? sv : sv.substr(0, next);
  }

  std::vector<std::string_view> components() const {
    std::vector<std::string_view> out;
    std::string_view sv(full);
    size_t pos = (!sv.empty() && sv.front() == '/') ? 1 : 0;
    while (pos <= sv.size()) {
      const size_t next = sv.find('/', pos);
      if (next == std::string_view::npos) {
        if (pos < sv.size()) out.push_back(sv.substr(pos));
        break;
      }
      if (next > pos) out.push_back(sv.substr(pos, next - pos));
      pos = next + 1;
    }
    return out;
  }

  bool operator==(const Name& o) const { return full == o.full; }
};

enum class InterestKind : uint8_t { regular, attack_unpopular, attack_nonexistent };

struct Interest {
  Name name;
  uint64_t nonce = 0;
  double issue_time = 0.0;  // first issue (retransmissions keep it)
  uint32_t consumer = 0;    // issuing node id
  InterestKind kind = InterestKind::regular;
};

struct DataPacket {
  Name name;
  uint32_t payload_bytes = 1024;
};

}  // namespace elda::sim
