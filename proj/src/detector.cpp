#include "elda/detector.hpp"

#include <algorithm>

namespace elda {

std::string_view name_prefix(std::string_view name) {
  if (!name.empty() && name.front() == '/') {
    const size_t next = name.find('/', 1);
    return next == std::string_view::npos ? name : name.substr(0, next);
  }
  const size_t next = name.find('/');
  return next == std::string_view::npos ? name : name.substr(0, next);
}

Detector::Detector(DetectorConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.sketch.validate();
  cfg_.threshold.validate();
  if (cfg_.backend == SketchBackend::lfm) {
    patterns_ = std::make_shared<PatternMatrix>(PatternMatrix::generate(
        cfg_.sketch.m_substrings, cfg_.sketch.n_patterns, cfg_.sketch.pattern_seed));
  }
}

Detector::Monitor& Detector::monitor_for(std::string_view prefix) {
  if (auto it = by_prefix_.find(std::string(prefix)); it != by_prefix_.end()) {
    return *monitors_[it->second];
  }
  auto m = std::make_unique<Monitor>(Monitor{
      std::string(prefix),
      cfg_.backend == SketchBackend::lfm
          ? std::variant<LfmSketch, HllFmSketch>(LfmSketch(cfg_.sketch, patterns_))
          : std::variant<LfmSketch, HllFmSketch>(
                HllFmSketch(cfg_.sketch.l_bits, cfg_.sketch.n_patterns, cfg_.sketch.hash_seed)),
      MonitorHistory(cfg_.threshold.sample_size),
      std::nullopt});
  monitors_.push_back(std::move(m));
  by_prefix_.emplace(std::string(prefix), monitors_.size() - 1);
  return *monitors_.back();
}

void Detector::observe_interest(std::string_view interest_name) {
  if (interest_name.empty()) return;
  Monitor& m = monitor_for(name_prefix(interest_name));
  std::visit([&](auto& sk) { sk.insert(interest_name); }, m.sketch);
}

double Detector::epoch_statistic(Monitor& m) const {
  return std::visit(
      [&](auto& sk) -> double {
        if (sk.insert_count() == 0) return 0.0;  // empty epoch counts as cardinality 0
        return cfg_.threshold_on_raw_h ? sk.raw_h() : sk.estimate();
      },
      m.sketch);
}

std::vector<Alarm> Detector::end_epoch(double wall_time) {
  std::vector<Alarm> alarms;
  for (auto& mp : monitors_) {
    Monitor& m = *mp;
    const double stat = epoch_statistic(m);
    bool alarm = false;
    if (m.threshold && stat > *m.threshold) {
      alarm = true;
      alarms.push_back({m.prefix, epoch_index_, stat, *m.threshold, wall_time});
      // Attack-epoch statistics are kept out of the window so the learned
      // threshold is not poisoned.
    } else {
      m.history.push(stat);
      if (m.history.full()) {
        ThresholdConfig tc = cfg_.threshold;
        tc.rng_seed = mix_seed(cfg_.threshold.rng_seed, digest64(m.prefix, 0x7468), epoch_index_);
        m.threshold = mc_threshold(m.history.values(), tc);
      }
    }
    trace_.push_back({epoch_index_, wall_time, m.prefix, stat, m.threshold, alarm});
    std::visit([](auto& sk) { sk.reset(); }, m.sketch);
  }
  ++epoch_index_;
  return alarms;
}

DetectionReport Detector::score_run(const std::vector<Alarm>& alarms,
                                    const std::vector<AttackInterval>& schedule) {
  DetectionReport rep;
  rep.attacks = schedule.size();
  rep.alarm_count = alarms.size();
  std::vector<bool> hit(schedule.size(), false);
  for (const Alarm& a : alarms) {
    bool in_interval = false;
    for (size_t i = 0; i < schedule.size(); ++i) {
      const AttackInterval& iv = schedule[i];
      if (a.prefix == iv.prefix && a.wall_time >= iv.start && a.wall_time <= iv.end) {
        hit[i] = true;
        in_interval = true;
      }
    }
    if (!in_interval) ++rep.false_positives;
  }
  rep.detected = static_cast<uint64_t>(std::count(hit.begin(), hit.end(), true));
  if (rep.attacks > 0) {
    rep.detection_rate = static_cast<double>(rep.detected) / static_cast<double>(rep.attacks);
  }
  rep.false_positive_rate =
      rep.alarm_count == 0
          ? 0.0
          : static_cast<double>(rep.false_positives) / static_cast<double>(rep.alarm_count);
  return rep;
}

uint64_t Detector::per_prefix_state_bits() const {
  return static_cast<uint64_t>(cfg_.sketch.n_patterns) * cfg_.sketch.l_bits;
}

uint64_t Detector::shared_state_bits() const {
  return patterns_ ? patterns_->storage_bits() : 0;
}

uint64_t Detector::total_state_bits() const {
  return shared_state_bits() + per_prefix_state_bits() * monitors_.size();
}

std::optional<double> Detector::current_threshold(std::string_view prefix) const {
  auto it = by_prefix_.find(std::string(prefix));
  if (it == by_prefix_.end()) return std::nullopt;
  return monitors_[it->second]->threshold;
}

}  // namespace elda
