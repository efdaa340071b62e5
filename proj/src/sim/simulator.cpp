#include "elda/sim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <queue>
#include <unordered_map>

#include "elda/errors.hpp"
#include "elda/rng.hpp"
#include "elda/sim/content_store.hpp"
#include "elda/sim/fib.hpp"
#include "elda/sim/pit.hpp"
#include "elda/sim/zipf.hpp"

namespace elda::sim {

namespace {

std::string fmt_double(double v, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

std::string fmt_cell(double v, int prec = 6) {
  return std::isnan(v) ? std::string() : fmt_double(v, prec);
}

}  // namespace

std::string metrics_csv(const std::vector<MetricsRow>& rows) {
  std::string out = "time_s,node,cache_hit_rate,pit_available_rate,avg_rtt_ms,interests_in,data_out\n";
  for (const auto& r : rows) {
    out += fmt_double(r.time_s, 1);
    out += ',';
    out += r.node;
    out += ',';
    out += fmt_cell(r.cache_hit_rate);
    out += ',';
    out += fmt_cell(r.pit_available_rate);
    out += ',';
    out += fmt_cell(r.avg_rtt_ms, 3);
    out += ',';
    out += std::to_string(r.interests_in);
    out += ',';
    out += std::to_string(r.data_out);
    out += '\n';
  }
  return out;
}

std::string detector_trace_csv(const std::vector<EpochTraceRow>& rows) {
  std::string out = "epoch,time_s,prefix,statistic,threshold,alarm\n";
  for (const auto& r : rows) {
    out += std::to_string(r.epoch_index);
    out += ',';
    out += fmt_double(r.wall_time, 1);
    out += ',';
    out += r.prefix;
    out += ',';
    out += fmt_double(r.statistic, 4);
    out += ',';
    out += r.threshold ? fmt_double(*r.threshold, 4) : std::string();
    out += ',';
    out += (r.alarm ? "1" : "0");
    out += '\n';
  }
  return out;
}

struct Simulator::Impl {
  enum class EvKind : uint8_t {
    interest_arrive,
    data_arrive,
    consumer_issue,
    rto,
    epoch_tick,
    metrics_tick,
  };

  struct Event {
    double t;
    uint64_t seq;
    EvKind kind;
    uint32_t node = 0;
    uint32_t channel = 0;  // arriving channel for packets
    uint64_t gen = 0;      // outstanding-entry generation for rto events
    std::shared_ptr<const Interest> interest;
    std::shared_ptr<const DataPacket> data;
  };

  struct EventOrder {
    bool operator()(const Event& a, const Event& b) const {
      if (a.t != b.t) return a.t > b.t;
      return a.seq > b.seq;
    }
  };

  // One direction of a link.
  struct Channel {
    uint32_t from, to;
    double bandwidth_bps;
    double delay_s;
    uint32_t reverse;  // channel id of the opposite direction
    double next_free = -std::numeric_limits<double>::infinity();
    uint64_t drops = 0;
  };

  struct Outstanding {
    double first_issue;
    uint32_t retries = 0;
    uint64_t gen = 0;
  };

  struct NodeState {
    NodeSpec spec;
    std::vector<uint32_t> channels_out;
    std::optional<ContentStore> cs;
    std::optional<PitTable> pit;
    Fib fib;
    std::optional<Detector> detector;
    std::optional<FrequencyBaseline> freq;

    // consumer state
    std::optional<Rng> rng;
    std::unordered_map<std::string, Outstanding> outstanding;
    uint64_t attack_seq = 0;
    uint32_t uplink = 0;
    bool compromised = false;

    // per-second accumulators
    uint64_t m_interests_in = 0;
    uint64_t m_data_out = 0;
    uint64_t m_cs_hits = 0;
    uint64_t m_cs_lookups = 0;
    double m_rtt_sum = 0.0;
    uint64_t m_rtt_n = 0;

    RouterCounters counters;
  };

  SimConfig cfg;
  std::vector<NodeState> nodes;
  std::vector<Channel> channels;
  std::priority_queue<Event, std::vector<Event>, EventOrder> queue;
  uint64_t seq = 0;
  uint64_t gen_counter = 0;
  std::optional<ZipfSampler> zipf;
  RunResult result;
  double t_end = 0.0;
  double rtt_total = 0.0;
  uint64_t rtt_count = 0;

  explicit Impl(SimConfig c) : cfg(std::move(c)) { build(); }

  void push(Event e) {
    e.seq = seq++;
    queue.push(std::move(e));
  }

  uint32_t data_wire_bytes() const { return cfg.data_header_bytes + cfg.payload_bytes; }

  void build() {
    cfg.topo.validate();
    if (cfg.detector_routers.empty()) cfg.detector_routers = {cfg.topo.gateway};
    zipf.emplace(cfg.regular.zipf_alpha, cfg.regular.catalog);

    nodes.clear();
    for (const auto& ns : cfg.topo.nodes) {
      NodeState n;
      n.spec = ns;
      if (ns.kind == NodeKind::router) {
        n.cs.emplace(cfg.cs_capacity);
        n.pit.emplace(cfg.pit_capacity, cfg.pit_timeout_s);
      }
      nodes.push_back(std::move(n));
    }

    for (const auto& ls : cfg.topo.links) {
      const uint32_t a = static_cast<uint32_t>(cfg.topo.node_index(ls.a));
      const uint32_t b = static_cast<uint32_t>(cfg.topo.node_index(ls.b));
      const uint32_t ab = static_cast<uint32_t>(channels.size());
      channels.push_back({a, b, ls.bandwidth_bps, ls.delay_s, ab + 1});
      channels.push_back({b, a, ls.bandwidth_bps, ls.delay_s, ab});
      nodes[a].channels_out.push_back(ab);
      nodes[b].channels_out.push_back(ab + 1);
    }

    for (auto& n : nodes) {
      if (n.spec.kind == NodeKind::consumer) {
        if (n.channels_out.size() != 1) {
          throw ConfigError("consumer " + n.spec.name + " must have exactly one link");
        }
        n.uplink = n.channels_out[0];
      }
    }

    build_fibs();

    for (const auto& name : cfg.compromised) {
      const int i = cfg.topo.node_index(name);
      if (i >= 0 && cfg.attack.kind != AttackKind::none) nodes[i].compromised = true;
    }

    if (cfg.detector) {
      for (const auto& rn : cfg.detector_routers) {
        const int i = cfg.topo.node_index(rn);
        if (i < 0) throw ConfigError("detector router not found: " + rn);
        if (cfg.use_freq_observer) {
          nodes[i].freq.emplace(cfg.freq_config);
        } else {
          nodes[i].detector.emplace(*cfg.detector);
        }
      }
    }
  }

  // Shortest-path next hops toward each producer, per registered prefix.
  void build_fibs() {
    for (uint32_t p = 0; p < nodes.size(); ++p) {
      if (nodes[p].spec.kind != NodeKind::producer) continue;
      std::vector<int> parent_channel(nodes.size(), -1);
      std::vector<bool> seen(nodes.size(), false);
      std::queue<uint32_t> bfs;
      bfs.push(p);
      seen[p] = true;
      while (!bfs.empty()) {
        const uint32_t u = bfs.front();
        bfs.pop();
        for (uint32_t ch : nodes[u].channels_out) {
          const uint32_t v = channels[ch].to;
          if (!seen[v]) {
            seen[v] = true;
            parent_channel[v] = static_cast<int>(channels[ch].reverse);  // v -> u
            bfs.push(v);
          }
        }
      }
      for (uint32_t v = 0; v < nodes.size(); ++v) {
        if (v == p || !seen[v] || nodes[v].spec.kind != NodeKind::router) continue;
        for (const auto& prefix : cfg.topo.producer_prefixes) {
          nodes[v].fib.add_route(prefix, static_cast<uint32_t>(parent_channel[v]));
        }
      }
    }
  }

  // FIFO drop-tail transmit; returns the arrival time or nullopt on drop.
  std::optional<double> transmit(uint32_t ch_id, uint32_t bytes, double now) {
    Channel& ch = channels[ch_id];
    const double start = std::max(ch.next_free, now);
    const double queued_bytes = (start - now) * ch.bandwidth_bps / 8.0;
    if (queued_bytes + bytes > cfg.queue_capacity_bytes) {
      ++ch.drops;
      ++result.queue_drops;
      return std::nullopt;
    }
    const double ser = static_cast<double>(bytes) * 8.0 / ch.bandwidth_bps;
    ch.next_free = start + ser;
    return ch.next_free + ch.delay_s;
  }

  void send_interest(uint32_t ch_id, std::shared_ptr<const Interest> i, double now) {
    if (auto at = transmit(ch_id, cfg.interest_bytes, now)) {
      push({*at, 0, EvKind::interest_arrive, channels[ch_id].to, ch_id, 0, std::move(i), nullptr});
    }
  }

  void send_data(uint32_t ch_id, std::shared_ptr<const DataPacket> d, double now) {
    if (auto at = transmit(ch_id, data_wire_bytes(), now)) {
      NodeState& sender = nodes[channels[ch_id].from];
      ++sender.m_data_out;
      if (sender.spec.kind == NodeKind::router) ++sender.counters.data_forwarded;
      push({*at, 0, EvKind::data_arrive, channels[ch_id].to, ch_id, 0, nullptr, std::move(d)});
    }
  }

  void schedule_initial() {
    const double t0 = -cfg.warmup_s;
    t_end = cfg.duration_s;

    for (uint32_t i = 0; i < nodes.size(); ++i) {
      NodeState& n = nodes[i];
      if (n.spec.kind != NodeKind::consumer) continue;
      n.rng.emplace(mix_seed(cfg.seed, 0xc0503e5ULL, i));
      if (n.compromised) {
        push({cfg.attack.start_s, 0, EvKind::consumer_issue, i, 0, 0, nullptr, nullptr});
      } else {
        push({t0 + n.rng->exponential(cfg.regular.rate_per_consumer), 0, EvKind::consumer_issue, i,
              0, 0, nullptr, nullptr});
      }
    }

    if (cfg.detector) {
      const double epoch = cfg.detector->epoch_seconds;
      for (uint32_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].detector || nodes[i].freq) {
          push({t0 + epoch, 0, EvKind::epoch_tick, i, 0, 0, nullptr, nullptr});
        }
      }
    }

    // Tick at t=0 resets accumulators after warmup; rows follow at 1..end.
    push({0.0, 0, EvKind::metrics_tick, 0, 0, 0, nullptr, nullptr});
  }

  RunResult run() {
    schedule_initial();
    while (!queue.empty()) {
      Event e = queue.top();
      queue.pop();
      if (e.t > t_end + 1e-9) break;
      switch (e.kind) {
        case EvKind::interest_arrive: on_interest(e); break;
        case EvKind::data_arrive: on_data(e); break;
        case EvKind::consumer_issue: on_issue(e); break;
        case EvKind::rto: on_rto(e); break;
        case EvKind::epoch_tick: on_epoch(e); break;
        case EvKind::metrics_tick: on_metrics(e); break;
      }
    }
    finish();
    return std::move(result);
  }

  void on_issue(const Event& e) {
    NodeState& n = nodes[e.node];
    const double t = e.t;

    if (n.compromised) {
      issue_attack(e.node, n, t);
      const double next = t + 1.0 / cfg.attack.rate_per_attacker;
      push({next, 0, EvKind::consumer_issue, e.node, 0, 0, nullptr, nullptr});
      return;
    }

    const uint32_t rank = zipf->sample(*n.rng);
    std::string name = regular_name(rank);
    ++n.m_interests_in;
    auto it = n.outstanding.find(name);
    if (it != n.outstanding.end()) {
      ++result.coalesced;  // an in-flight request for this name will cover it
    } else {
      const uint64_t gen = ++gen_counter;
      n.outstanding.emplace(name, Outstanding{t, 0, gen});
      ++result.issued_first;
      auto interest = std::make_shared<Interest>(
          Interest{Name{std::move(name)}, gen_counter, t, e.node, InterestKind::regular});
      send_interest(n.uplink, interest, t);
      push({t + cfg.rto_s, 0, EvKind::rto, e.node, 0, gen, interest, nullptr});
    }
    push({t + n.rng->exponential(cfg.regular.rate_per_consumer), 0, EvKind::consumer_issue, e.node,
          0, 0, nullptr, nullptr});
  }

  void issue_attack(uint32_t node_id, NodeState& n, double t) {
    const bool nonexistent =
        cfg.attack.kind == AttackKind::fla && t >= cfg.attack.nonexistent_start_s;
    const uint64_t s = n.attack_seq++;
    std::string name = nonexistent ? nonexistent_name(cfg.attack.prefix, node_id, s)
                                   : unpopular_name(cfg.attack.prefix, node_id, s);
    ++n.m_interests_in;
    auto interest = std::make_shared<Interest>(Interest{
        Name{std::move(name)}, ++gen_counter, t, node_id,
        nonexistent ? InterestKind::attack_nonexistent : InterestKind::attack_unpopular});
    send_interest(n.uplink, interest, t);
  }

  void on_rto(const Event& e) {
    NodeState& n = nodes[e.node];
    auto it = n.outstanding.find(e.interest->name.full);
    if (it == n.outstanding.end() || it->second.gen != e.gen) return;  // satisfied or superseded
    if (it->second.retries >= cfg.max_retransmits || e.t >= t_end) {
      ++result.abandoned;
      n.outstanding.erase(it);
      return;
    }
    ++it->second.retries;
    ++result.issued_retx;
    ++n.m_interests_in;
    send_interest(n.uplink, e.interest, e.t);
    push({e.t + cfg.rto_s, 0, EvKind::rto, e.node, 0, e.gen, e.interest, nullptr});
  }

  void on_interest(const Event& e) {
    NodeState& n = nodes[e.node];
    const double t = e.t;
    const uint32_t back = channels[e.channel].reverse;

    if (n.spec.kind == NodeKind::producer) {
      const auto comps = e.interest->name.components();
      bool registered = false;
      for (const auto& p : cfg.topo.producer_prefixes) {
        registered |= (e.interest->name.prefix() == p);
      }
      if (!registered || comps.size() < 2 || is_nonexistent_id(comps.back())) {
        ++result.producer_unanswered;
        return;
      }
      auto d = std::make_shared<DataPacket>(DataPacket{e.interest->name, cfg.payload_bytes});
      send_data(back, std::move(d), t);
      return;
    }

    if (n.spec.kind == NodeKind::consumer) return;  // not expected in a tree

    ++n.counters.interests_received;
    ++n.m_interests_in;
    if (n.detector) n.detector->observe_interest(e.interest->name.full);
    if (n.freq) n.freq->observe(e.interest->name.full);

    n.counters.pit_expired += n.pit->expire_until(t);

    ++n.m_cs_lookups;
    if (auto hit = n.cs->lookup(e.interest->name.full)) {
      ++n.counters.cs_hits;
      ++n.m_cs_hits;
      send_data(back, std::make_shared<DataPacket>(*hit), t);
      return;
    }

    switch (n.pit->record(e.interest->name.full, back, t)) {
      case PitTable::RecordResult::aggregated:
        ++n.counters.pit_aggregated;
        return;
      case PitTable::RecordResult::full:
        ++n.counters.pit_dropped_full;
        return;
      case PitTable::RecordResult::created:
        ++n.counters.pit_created;
        break;
    }

    if (auto egress = n.fib.lookup(e.interest->name)) {
      send_interest(*egress, e.interest, t);
    } else {
      ++n.counters.fib_drops;
    }
  }

  void on_data(const Event& e) {
    NodeState& n = nodes[e.node];
    const double t = e.t;

    if (n.spec.kind == NodeKind::consumer) {
      auto it = n.outstanding.find(e.data->name.full);
      if (it == n.outstanding.end()) {
        ++result.duplicate_data;
        return;
      }
      const double rtt = t - it->second.first_issue;
      n.outstanding.erase(it);
      ++result.satisfied;
      n.m_rtt_sum += rtt;
      ++n.m_rtt_n;
      ++n.m_data_out;  // data received this second
      rtt_total += rtt;
      ++rtt_count;
      return;
    }
    if (n.spec.kind == NodeKind::producer) return;

    ++n.counters.data_received;
    n.counters.pit_expired += n.pit->expire_until(t);
    auto ifaces = n.pit->consume(e.data->name.full);
    if (!ifaces) {
      ++n.counters.unsolicited_data;
      return;
    }
    n.cs->insert(*e.data);
    for (uint32_t ch : *ifaces) send_data(ch, e.data, t);
  }

  void on_epoch(const Event& e) {
    NodeState& n = nodes[e.node];
    if (n.detector) {
      auto alarms = n.detector->end_epoch(e.t);
      for (auto& a : alarms) {
        if (a.wall_time >= 0.0) result.alarms.push_back(std::move(a));
      }
    } else if (n.freq) {
      // Map per-content alarms onto prefixes, one alarm per prefix per epoch.
      std::vector<std::string> seen;
      for (const auto& fa : n.freq->end_epoch()) {
        if (e.t < 0.0) continue;
        const std::string p(name_prefix(fa.content));
        if (std::find(seen.begin(), seen.end(), p) != seen.end()) continue;
        seen.push_back(p);
        result.alarms.push_back({p, static_cast<uint64_t>(e.t + cfg.warmup_s), fa.count,
                                 fa.threshold, e.t});
      }
    }
    push({e.t + cfg.detector->epoch_seconds, 0, EvKind::epoch_tick, e.node, 0, 0, nullptr, nullptr});
  }

  void on_metrics(const Event& e) {
    const double t = e.t;
    if (t > 0.0) {
      uint64_t agg_in = 0, agg_out = 0, agg_rtt_n = 0;
      double agg_rtt = 0.0;
      for (auto& n : nodes) {
        MetricsRow row;
        row.time_s = t;
        row.node = n.spec.name;
        row.cache_hit_rate = std::numeric_limits<double>::quiet_NaN();
        row.pit_available_rate = std::numeric_limits<double>::quiet_NaN();
        row.avg_rtt_ms = std::numeric_limits<double>::quiet_NaN();
        if (n.spec.kind == NodeKind::router) {
          if (n.m_cs_lookups > 0) {
            row.cache_hit_rate =
                static_cast<double>(n.m_cs_hits) / static_cast<double>(n.m_cs_lookups);
          }
          n.pit->expire_until(t);
          row.pit_available_rate = n.pit->available_rate();
        } else if (n.spec.kind == NodeKind::consumer && n.m_rtt_n > 0) {
          row.avg_rtt_ms = 1000.0 * n.m_rtt_sum / static_cast<double>(n.m_rtt_n);
        }
        row.interests_in = n.m_interests_in;
        row.data_out = n.m_data_out;
        if (n.spec.kind == NodeKind::consumer && !n.compromised) {
          agg_in += n.m_interests_in;
          agg_out += n.m_data_out;
          agg_rtt += n.m_rtt_sum;
          agg_rtt_n += n.m_rtt_n;
        }
        result.metrics.push_back(std::move(row));
      }
      MetricsRow agg;
      agg.time_s = t;
      agg.node = "consumers";
      agg.cache_hit_rate = std::numeric_limits<double>::quiet_NaN();
      agg.pit_available_rate = std::numeric_limits<double>::quiet_NaN();
      agg.avg_rtt_ms = agg_rtt_n > 0 ? 1000.0 * agg_rtt / static_cast<double>(agg_rtt_n)
                                     : std::numeric_limits<double>::quiet_NaN();
      agg.interests_in = agg_in;
      agg.data_out = agg_out;
      result.metrics.push_back(std::move(agg));
    }
    for (auto& n : nodes) {
      n.m_interests_in = n.m_data_out = 0;
      n.m_cs_hits = n.m_cs_lookups = 0;
      n.m_rtt_sum = 0.0;
      n.m_rtt_n = 0;
    }
    if (t + 1.0 <= t_end + 1e-9) {
      push({t + 1.0, 0, EvKind::metrics_tick, 0, 0, 0, nullptr, nullptr});
    }
  }

  void finish() {
    for (auto& n : nodes) {
      result.outstanding_at_end += n.outstanding.size();
      if (n.spec.kind == NodeKind::router) {
        result.routers[n.spec.name] = n.counters;
      }
      if (n.detector) {
        const auto& tr = n.detector->trace();
        result.detector_trace.insert(result.detector_trace.end(), tr.begin(), tr.end());
        result.detector_state_bits += n.detector->total_state_bits();
      }
      if (n.freq) result.detector_state_bits += n.freq->footprint_bits();
    }
    result.mean_rtt_ms = rtt_count > 0 ? 1000.0 * rtt_total / static_cast<double>(rtt_count) : 0.0;
  }
};

Simulator::Simulator(SimConfig cfg) : impl_(new Impl(std::move(cfg))) {}
Simulator::~Simulator() { delete impl_; }
RunResult Simulator::run() { return impl_->run(); }

RunResult run_simulation(const SimConfig& cfg) {
  Simulator sim(cfg);
  return sim.run();
}

}  // namespace elda::sim
