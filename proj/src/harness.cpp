#include "elda/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "elda/baselines.hpp"
#include "elda/chart.hpp"
#include "elda/errors.hpp"
#include "elda/lfm_sketch.hpp"
#include "elda/sim/zipf.hpp"
#include "elda/threshold.hpp"

namespace elda {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(double v, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int col(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
  }
};

Csv read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open CSV: " + path);
  Csv csv;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (line.size() && line.back() == ',') cells.push_back("");
    if (first) {
      csv.header = cells;
      first = false;
    } else if (!cells.empty()) {
      csv.rows.push_back(cells);
    }
  }
  if (csv.header.empty() || csv.rows.empty()) throw ConfigError("empty CSV: " + path);
  return csv;
}

}  // namespace

std::vector<std::string> make_distinct_items(uint64_t count, uint64_t seed) {
  std::vector<std::string> items;
  items.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    items.push_back("itm-" + std::to_string(seed) + "-" + std::to_string(i));
  }
  return items;
}

std::vector<std::string> make_name_stream(uint64_t count, uint64_t seed, double alpha,
                                          uint32_t catalog) {
  sim::ZipfSampler zipf(alpha, catalog);
  Rng rng(mix_seed(seed, 0xbe7c4));
  std::vector<std::string> names;
  names.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    names.push_back(sim::regular_name(zipf.sample(rng)));
  }
  return names;
}

// ---------------------------------------------------------------------------
// run

namespace {

std::string alarms_jsonl(const std::vector<Alarm>& alarms) {
  std::string out;
  for (const auto& a : alarms) {
    json j = {{"prefix", a.prefix},
              {"epoch", a.epoch_index},
              {"statistic", a.statistic},
              {"threshold", a.threshold},
              {"time_s", a.wall_time}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

void write_run_charts(const std::string& dir, const ScenarioSpec& spec,
                      const sim::RunResult& result, const std::string& gateway) {
  ChartSeries hit{"gateway hit rate", {}};
  ChartSeries pit{"gateway PIT available", {}};
  ChartSeries rtt{"consumer avg RTT", {}};
  for (const auto& r : result.metrics) {
    if (r.node == gateway) {
      if (!std::isnan(r.cache_hit_rate)) hit.points.push_back({r.time_s, r.cache_hit_rate});
      if (!std::isnan(r.pit_available_rate)) pit.points.push_back({r.time_s, r.pit_available_rate});
    }
    if (r.node == "consumers" && !std::isnan(r.avg_rtt_ms)) {
      rtt.points.push_back({r.time_s, r.avg_rtt_ms});
    }
  }
  write_file(dir + "/hit_rate.svg",
             line_chart_svg({hit}, {spec.name + ": cache hit rate", "time (s)", "hit rate"}));
  write_file(dir + "/pit_available.svg",
             line_chart_svg({pit}, {spec.name + ": PIT available rate", "time (s)", "available"}));
  if (!rtt.points.empty()) {
    write_file(dir + "/rtt.svg",
               line_chart_svg({rtt}, {spec.name + ": average RTT", "time (s)", "RTT (ms)"}));
  }

  // Detection view for the attacked prefix (or the busiest one in controls).
  std::map<std::string, ChartSeries> stat_series;
  ChartSeries thr_series{"threshold", {}};
  for (const auto& row : result.detector_trace) {
    if (row.wall_time < 0) continue;
    if (row.prefix == spec.attack_prefix) {
      stat_series["statistic"].points.push_back({row.wall_time, row.statistic});
      if (row.threshold) thr_series.points.push_back({row.wall_time, *row.threshold});
    }
  }
  if (!stat_series["statistic"].points.empty()) {
    ChartSeries st = stat_series["statistic"];
    st.label = "statistic " + spec.attack_prefix;
    std::vector<ChartSeries> series{st};
    if (!thr_series.points.empty()) series.push_back(thr_series);
    write_file(dir + "/detection.svg",
               line_chart_svg(series, {spec.name + ": detection", "time (s)", "estimate"}));
  }
}

}  // namespace

RunOutcome harness_run(const ScenarioSpec& spec, const RunOptions& opts) {
  RunOutcome out;
  out.spec = spec;
  const uint64_t seed = opts.seed ? opts.seed : spec.seed;
  sim::SimConfig sc = spec.make_sim_config(opts.scale, seed);
  switch (opts.detector) {
    case DetectorMode::elda:
      sc.detector->backend = SketchBackend::lfm;
      break;
    case DetectorMode::strawman:
      sc.detector->backend = SketchBackend::hll_fm;
      break;
    case DetectorMode::freq:
      sc.use_freq_observer = true;
      sc.freq_config.capacity = sc.regular.catalog;
      break;
  }

  out.result = sim::run_simulation(sc);
  out.report = Detector::score_run(out.result.alarms, spec.attack_schedule());

  if (opts.write_artifacts) {
    out.dir = opts.out_dir + "/" + spec.name;
    fs::create_directories(out.dir);
    write_file(out.dir + "/metrics.csv", sim::metrics_csv(out.result.metrics));
    write_file(out.dir + "/detection.csv", sim::detector_trace_csv(out.result.detector_trace));
    write_file(out.dir + "/alarms.jsonl", alarms_jsonl(out.result.alarms));
    write_file(out.dir + "/scenario.json", spec.to_json());

    json rep;
    rep["scenario"] = spec.name;
    rep["seed"] = seed;
    rep["scale"] = opts.scale;
    rep["attacks"] = out.report.attacks;
    rep["detected"] = out.report.detected;
    if (out.report.detection_rate) rep["detection_rate"] = *out.report.detection_rate;
    else rep["detection_rate"] = "n/a";
    rep["alarms"] = out.report.alarm_count;
    rep["false_positives"] = out.report.false_positives;
    rep["false_positive_rate"] = out.report.false_positive_rate;
    rep["mean_rtt_ms"] = out.result.mean_rtt_ms;
    rep["satisfied"] = out.result.satisfied;
    rep["issued_first"] = out.result.issued_first;
    rep["issued_retx"] = out.result.issued_retx;
    rep["abandoned"] = out.result.abandoned;
    rep["queue_drops"] = out.result.queue_drops;
    rep["producer_unanswered"] = out.result.producer_unanswered;
    rep["detector_state_bits"] = out.result.detector_state_bits;
    for (const auto& [name, c] : out.result.routers) {
      rep["routers"][name] = {{"interests", c.interests_received},
                              {"cs_hits", c.cs_hits},
                              {"pit_created", c.pit_created},
                              {"pit_aggregated", c.pit_aggregated},
                              {"pit_dropped_full", c.pit_dropped_full},
                              {"pit_expired", c.pit_expired},
                              {"fib_drops", c.fib_drops},
                              {"data_received", c.data_received},
                              {"data_forwarded", c.data_forwarded},
                              {"unsolicited_data", c.unsolicited_data}};
    }
    write_file(out.dir + "/report.json", rep.dump(2) + "\n");

    if (opts.charts) {
      write_run_charts(out.dir, spec, out.result, sc.topo.gateway);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// sweep

std::string SweepSummary::csv() const {
  std::string out =
      "scenario,attacks,detected,detection_rate,alarms,false_positives,false_positive_rate,"
      "mean_rtt_ms,gateway_hit_after_onset,gateway_pit_min,control_epochs\n";
  for (const auto& r : rows) {
    out += r.scenario + ',' + std::to_string(r.report.attacks) + ',' +
           std::to_string(r.report.detected) + ',';
    out += r.report.detection_rate ? fmt(*r.report.detection_rate) : std::string("n/a");
    out += ',' + std::to_string(r.report.alarm_count) + ',' +
           std::to_string(r.report.false_positives) + ',' + fmt(r.report.false_positive_rate) +
           ',' + fmt(r.mean_rtt_ms, 3) + ',' + fmt(r.gateway_hit_after_onset) + ',' +
           fmt(r.gateway_pit_min) + ',' + std::to_string(r.control_epochs) + '\n';
  }
  return out;
}

namespace {

SweepRow summarize_run(const RunOutcome& run, const std::string& gateway) {
  SweepRow row;
  row.scenario = run.spec.name;
  row.report = run.report;
  row.mean_rtt_ms = run.result.mean_rtt_ms;
  double hit_sum = 0.0;
  uint64_t hit_n = 0;
  for (const auto& m : run.result.metrics) {
    if (m.node != gateway) continue;
    if (!std::isnan(m.pit_available_rate)) {
      row.gateway_pit_min = std::min(row.gateway_pit_min, m.pit_available_rate);
    }
    if (m.time_s > run.spec.attack_start_s && !std::isnan(m.cache_hit_rate)) {
      hit_sum += m.cache_hit_rate;
      ++hit_n;
    }
  }
  row.gateway_hit_after_onset = hit_n ? hit_sum / hit_n : 0.0;
  if (run.spec.attack_kind == sim::AttackKind::none) {
    for (const auto& tr : run.result.detector_trace) {
      if (tr.wall_time >= 0) ++row.control_epochs;
    }
  }
  return row;
}

void write_sweep_charts(const std::string& dir, const std::vector<RunOutcome>& runs) {
  auto series_for = [&](const std::string& prefix_match, auto getter,
                        const std::string& node) {
    std::vector<ChartSeries> out;
    for (const auto& run : runs) {
      if (run.spec.name.rfind(prefix_match, 0) != 0) continue;
      ChartSeries s{run.spec.name, {}};
      for (const auto& m : run.result.metrics) {
        if (m.node != node) continue;
        const double v = getter(m);
        if (!std::isnan(v)) s.points.push_back({m.time_s, v});
      }
      out.push_back(std::move(s));
    }
    return out;
  };

  auto hit = [](const sim::MetricsRow& m) { return m.cache_hit_rate; };
  auto pit = [](const sim::MetricsRow& m) { return m.pit_available_rate; };
  auto rtt = [](const sim::MetricsRow& m) { return m.avg_rtt_ms; };

  const auto lda_hit = series_for("LDA", hit, "gw");
  if (!lda_hit.empty()) {
    write_file(dir + "/lda_hit_rate.svg",
               line_chart_svg(lda_hit, {"LDA: gateway cache hit rate", "time (s)", "hit rate"}));
    write_file(dir + "/lda_rtt.svg",
               line_chart_svg(series_for("LDA", rtt, "consumers"),
                              {"LDA: average RTT", "time (s)", "RTT (ms)"}));
  }
  const auto fla_hit = series_for("FLA", hit, "gw");
  if (!fla_hit.empty()) {
    write_file(dir + "/fla_hit_rate.svg",
               line_chart_svg(fla_hit, {"FLA: gateway cache hit rate", "time (s)", "hit rate"}));
    write_file(dir + "/fla_pit_available.svg",
               line_chart_svg(series_for("FLA", pit, "gw"),
                              {"FLA: gateway PIT available rate", "time (s)", "available"}));
    write_file(dir + "/fla_rtt.svg",
               line_chart_svg(series_for("FLA", rtt, "consumers"),
                              {"FLA: average RTT", "time (s)", "RTT (ms)"}));
  }

  std::vector<std::string> cats;
  ChartSeries det{"detection rate", {}};
  ChartSeries fp{"false positive rate", {}};
  size_t idx = 0;
  for (const auto& run : runs) {
    if (run.spec.attack_kind == sim::AttackKind::none) continue;
    cats.push_back(run.spec.name);
    det.points.push_back({static_cast<double>(idx), run.report.detection_rate.value_or(0.0)});
    fp.points.push_back({static_cast<double>(idx), run.report.false_positive_rate});
    ++idx;
  }
  if (!cats.empty()) {
    write_file(dir + "/detection_rate.svg",
               bar_chart_svg(cats, {det}, {"Attack detection rate", "scenario", "rate"}));
    write_file(dir + "/false_positive_rate.svg",
               bar_chart_svg(cats, {fp}, {"False positive rate", "scenario", "rate"}));
  }
}

}  // namespace

SweepSummary harness_sweep(const RunOptions& opts, bool parallel) {
  const auto names = ScenarioSpec::builtin_names();
  std::vector<RunOutcome> runs(names.size());
  RunOptions ro = opts;
  ro.charts = opts.charts;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
#endif
  for (size_t i = 0; i < names.size(); ++i) {
    runs[i] = harness_run(ScenarioSpec::builtin(names[i]), ro);
  }

  SweepSummary sum;
  for (const auto& run : runs) {
    SweepRow row = summarize_run(run, "gw");
    sum.total_attacks += row.report.attacks;
    sum.total_detected += row.report.detected;
    sum.total_false_positives += row.report.false_positives;
    sum.total_control_epochs += row.control_epochs;
    sum.rows.push_back(std::move(row));
  }

  if (opts.write_artifacts) {
    const std::string dir = opts.out_dir + "/sweep";
    fs::create_directories(dir);
    write_file(dir + "/summary.csv", sum.csv());
    if (opts.charts) write_sweep_charts(dir, runs);
  }
  return sum;
}

// ---------------------------------------------------------------------------
// accuracy

std::string AccuracyTable::csv() const {
  std::string out =
      "n_patterns,cardinality,trials,lfm_bias,lfm_se,hll_bias,hll_se,lfm_mean_ratio,"
      "hll_mean_ratio,mean_gap,combined_sem\n";
  for (const auto& c : cells) {
    out += std::to_string(c.n_patterns) + ',' + std::to_string(c.cardinality) + ',' +
           std::to_string(c.trials) + ',' + fmt(c.lfm_bias, 5) + ',' + fmt(c.lfm_se, 5) + ',' +
           fmt(c.hll_bias, 5) + ',' + fmt(c.hll_se, 5) + ',' + fmt(c.lfm_mean_ratio, 5) + ',' +
           fmt(c.hll_mean_ratio, 5) + ',' + fmt(c.mean_gap, 5) + ',' + fmt(c.combined_sem, 5) +
           '\n';
  }
  return out;
}

AccuracyTable harness_accuracy(const std::vector<uint32_t>& pattern_counts,
                               const std::vector<uint64_t>& cardinalities, uint32_t trials,
                               uint64_t seed, bool parallel) {
  AccuracyTable table;
  for (uint32_t n : pattern_counts) {
    for (uint64_t card : cardinalities) {
      std::vector<double> lfm_ratio(trials), hll_ratio(trials);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
#endif
      for (uint32_t t = 0; t < trials; ++t) {
        const uint64_t s = mix_seed(seed, n, card + t * 1315423911ULL);
        SketchConfig cfg;
        cfg.n_patterns = n;
        cfg.m_substrings = n > 40320 ? 16 : 8;  // need M! >= N
        cfg.hash_seed = mix_seed(s, 1);
        cfg.pattern_seed = mix_seed(s, 2);
        LfmSketch lfm(cfg);
        HllFmSketch hll(cfg.l_bits, n, mix_seed(s, 3));
        ExactCounter exact;
        const auto items = make_distinct_items(card, mix_seed(s, 4));
        lfm.insert_many(items, false);
        hll.insert_many(items, false);
        for (const auto& it : items) exact.insert(it);
        lfm_ratio[t] = lfm.estimate() / static_cast<double>(exact.count());
        hll_ratio[t] = hll.estimate() / static_cast<double>(exact.count());
      }
      AccuracyCell cell;
      cell.n_patterns = n;
      cell.cardinality = card;
      cell.trials = trials;
      auto stats = [&](const std::vector<double>& r, double& bias, double& se, double& mean) {
        mean = std::accumulate(r.begin(), r.end(), 0.0) / r.size();
        double ss = 0;
        for (double x : r) ss += (x - mean) * (x - mean);
        se = r.size() > 1 ? std::sqrt(ss / (r.size() - 1)) : 0.0;
        bias = mean - 1.0;
      };
      stats(lfm_ratio, cell.lfm_bias, cell.lfm_se, cell.lfm_mean_ratio);
      stats(hll_ratio, cell.hll_bias, cell.hll_se, cell.hll_mean_ratio);
      cell.mean_gap = std::fabs(cell.lfm_mean_ratio - cell.hll_mean_ratio);
      cell.combined_sem =
          std::sqrt(cell.lfm_se * cell.lfm_se + cell.hll_se * cell.hll_se) / std::sqrt(trials);
      table.cells.push_back(cell);
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// complexity

std::string ComplexityReport::text() const {
  std::string out;
  out += "inserts: " + std::to_string(inserts) + "\n";
  out += "lfm  hash/insert:      " + fmt(lfm_hash_per_insert, 6) + " (expected 1)\n";
  out += "lfm  scan+step/insert: " + fmt(lfm_scan_step_per_insert, 4) +
         " (bound " + fmt(lfm_bound, 4) + ")\n";
  out += "hll  hash/insert:      " + fmt(hll_hash_per_insert, 6) + " (expected N)\n";
  out += "hll  scan/insert:      " + fmt(hll_scan_per_insert, 4) + " (expected " +
         fmt(hll_expected_scan, 4) + ")\n";
  return out;
}

ComplexityReport harness_complexity(uint64_t inserts, uint64_t seed) {
  SketchConfig cfg;
  LfmSketch lfm(cfg);
  HllFmSketch hll(cfg.l_bits, cfg.n_patterns, mix_seed(seed, 9));
  const auto items = make_distinct_items(inserts, mix_seed(seed, 10));
  lfm.insert_many(items);
  hll.insert_many(items);

  ComplexityReport rep;
  rep.inserts = inserts;
  const double n = static_cast<double>(inserts);
  rep.lfm_hash_per_insert = static_cast<double>(lfm.ops().hash_ops) / n;
  rep.lfm_scan_step_per_insert = static_cast<double>(lfm.ops().scan_and_step_total()) / n;
  const double w = cfg.substring_width();
  rep.lfm_bound = cfg.m_substrings * (2.0 - std::pow(0.5, w - 1)) + cfg.n_patterns;
  rep.hll_hash_per_insert = static_cast<double>(hll.ops().hash_ops) / n;
  rep.hll_scan_per_insert = static_cast<double>(hll.ops().substring_scans) / n;
  rep.hll_expected_scan = cfg.n_patterns * (2.0 - std::pow(0.5, cfg.l_bits - 1.0));
  return rep;
}

// ---------------------------------------------------------------------------
// calibrate

std::string CalibrationResult::csv() const {
  std::string out = "quantity,value\n";
  out += "c_lfm," + fmt(c_lfm, 6) + "\n";
  out += "c_hll," + fmt(c_hll, 6) + "\n";
  out += "heldout_median_ratio_lfm," + fmt(heldout_median_ratio_lfm, 4) + "\n";
  out += "heldout_median_ratio_hll," + fmt(heldout_median_ratio_hll, 4) + "\n";
  for (const auto& r : residual_rows) out += r + "\n";
  return out;
}

CalibrationResult harness_calibrate(uint32_t trials, uint64_t seed, bool parallel) {
  const std::vector<uint64_t> grid = {100, 1000, 10000, 100000};
  struct Sample {
    uint64_t card;
    double pow2h_lfm;
    double pow2h_hll;
  };
  std::vector<Sample> samples(grid.size() * trials);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) collapse(2) if (parallel)
#endif
  for (size_t g = 0; g < grid.size(); ++g) {
    for (uint32_t t = 0; t < trials; ++t) {
      const uint64_t card = grid[g];
      const uint64_t s = mix_seed(seed, g * 1000 + t);
      SketchConfig cfg;
      cfg.hash_seed = mix_seed(s, 1);
      cfg.pattern_seed = mix_seed(s, 2);
      LfmSketch lfm(cfg);
      HllFmSketch hll(cfg.l_bits, cfg.n_patterns, mix_seed(s, 3));
      ExactCounter exact;
      const auto items = make_distinct_items(card, mix_seed(s, 4));
      lfm.insert_many(items, false);
      hll.insert_many(items, false);
      for (const auto& it : items) exact.insert(it);
      samples[g * trials + t] = {exact.count(), std::exp2(lfm.raw_h()), std::exp2(hll.raw_h())};
    }
  }

  std::vector<double> lfm_raw_ratios, hll_raw_ratios;
  for (const auto& s : samples) {
    lfm_raw_ratios.push_back(s.pow2h_lfm / static_cast<double>(s.card));
    hll_raw_ratios.push_back(s.pow2h_hll / static_cast<double>(s.card));
  }
  CalibrationResult res;
  res.c_lfm = 1.0 / median(lfm_raw_ratios);
  res.c_hll = 1.0 / median(hll_raw_ratios);

  for (size_t g = 0; g < grid.size(); ++g) {
    std::vector<double> lr, hr;
    for (uint32_t t = 0; t < trials; ++t) {
      lr.push_back(samples[g * trials + t].pow2h_lfm * res.c_lfm / grid[g]);
      hr.push_back(samples[g * trials + t].pow2h_hll * res.c_hll / grid[g]);
    }
    res.residual_rows.push_back("median_ratio_lfm_at_" + std::to_string(grid[g]) + "," +
                                fmt(median(lr), 4));
    res.residual_rows.push_back("median_ratio_hll_at_" + std::to_string(grid[g]) + "," +
                                fmt(median(hr), 4));
  }

  // Held-out validation at 5e4.
  std::vector<double> lr, hr;
  const uint32_t heldout_trials = std::max(10u, trials / 2);
  for (uint32_t t = 0; t < heldout_trials; ++t) {
    const uint64_t s = mix_seed(seed, 0xd01dULL + t);
    SketchConfig cfg;
    cfg.hash_seed = mix_seed(s, 1);
    cfg.pattern_seed = mix_seed(s, 2);
    LfmSketch lfm(cfg);
    HllFmSketch hll(cfg.l_bits, cfg.n_patterns, mix_seed(s, 3));
    const auto items = make_distinct_items(50000, mix_seed(s, 4));
    lfm.insert_many(items);
    hll.insert_many(items);
    lr.push_back(std::exp2(lfm.raw_h()) * res.c_lfm / 50000.0);
    hr.push_back(std::exp2(hll.raw_h()) * res.c_hll / 50000.0);
  }
  res.heldout_median_ratio_lfm = median(lr);
  res.heldout_median_ratio_hll = median(hr);
  return res;
}

// ---------------------------------------------------------------------------
// bench

std::string BenchReport::json() const {
  nlohmann::json j;
  for (const auto& r : rows) {
    j["modes"].push_back({{"mode", r.mode},
                          {"items", r.items},
                          {"ns_per_item", r.ns_per_item},
                          {"items_per_second", r.items_per_second}});
  }
  j["elda_vs_strawman_speedup"] = elda_vs_strawman_speedup;
  j["bulk_parallel_speedup"] = bulk_parallel_speedup;
  j["bootstrap_parallel_speedup"] = bootstrap_parallel_speedup;
  return j.dump(2) + "\n";
}

BenchReport harness_bench(uint64_t items, uint64_t seed) {
  BenchReport rep;
  const auto stream = make_name_stream(items, seed);

  auto bench_observe = [&](DetectorMode mode) {
    DetectorConfig dc;
    dc.backend = mode == DetectorMode::strawman ? SketchBackend::hll_fm : SketchBackend::lfm;
    Detector det(dc);
    FrequencyBaseline freq({});
    const double t0 = now_seconds();
    if (mode == DetectorMode::freq) {
      for (const auto& name : stream) freq.observe(name);
    } else {
      for (const auto& name : stream) det.observe_interest(name);
    }
    const double dt = now_seconds() - t0;
    const char* label = mode == DetectorMode::elda ? "elda"
                        : mode == DetectorMode::strawman ? "strawman"
                                                         : "freq_baseline";
    rep.rows.push_back({label, items, dt * 1e9 / items, items / dt});
    return dt;
  };

  const double t_elda = bench_observe(DetectorMode::elda);
  const double t_straw = bench_observe(DetectorMode::strawman);
  bench_observe(DetectorMode::freq);
  rep.elda_vs_strawman_speedup = t_straw / t_elda;

  // Serial reference vs OpenMP bulk kernel on the raw sketch insert path.
  {
    SketchConfig cfg;
    LfmSketch serial_sketch(cfg), parallel_sketch(cfg);
    const double t0 = now_seconds();
    serial_sketch.insert_many(stream, false);
    const double t_serial = now_seconds() - t0;
    const double t1 = now_seconds();
    parallel_sketch.insert_many(stream, true);
    const double t_parallel = now_seconds() - t1;
    rep.rows.push_back({"lfm_bulk_serial", items, t_serial * 1e9 / items, items / t_serial});
    rep.rows.push_back({"lfm_bulk_parallel", items, t_parallel * 1e9 / items, items / t_parallel});
    rep.bulk_parallel_speedup = t_serial / t_parallel;
  }

  // Bootstrap threshold kernel at a stress resample count.
  {
    ThresholdConfig tc;
    tc.resamples = 200000;
    tc.rng_seed = mix_seed(seed, 77);
    std::vector<double> window = {10, 11, 9.5, 10.2, 10.8, 9.9, 10.1, 10.4, 9.7, 10.6};
    const double t0 = now_seconds();
    const double a = mc_threshold(window, tc, false);
    const double t_serial = now_seconds() - t0;
    const double t1 = now_seconds();
    const double b = mc_threshold(window, tc, true);
    const double t_parallel = now_seconds() - t1;
    if (a != b) throw std::logic_error("parallel bootstrap diverged from serial");
    rep.bootstrap_parallel_speedup = t_serial / t_parallel;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// memory shape

std::vector<MemoryShapeRow> harness_memory_shape(const std::vector<uint64_t>& catalogs,
                                                 uint64_t seed) {
  std::vector<MemoryShapeRow> rows;
  for (uint64_t catalog : catalogs) {
    DetectorConfig dc;
    Detector det(dc);
    FrequencyBaseline freq({catalog + 10, 3.0, 3});
    const auto names =
        make_name_stream(catalog * 3, mix_seed(seed, catalog), 0.9,
                         static_cast<uint32_t>(catalog));
    for (const auto& n : names) {
      det.observe_interest(n);
      freq.observe(n);
    }
    MemoryShapeRow row;
    row.distinct_names = catalog;
    row.elda_bits_per_prefix = det.per_prefix_state_bits();
    row.elda_shared_bits = det.shared_state_bits();
    row.freq_bits = freq.footprint_bits();
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// charts from artifacts

void harness_charts(const std::string& dir) {
  const std::string metrics_path = dir + "/metrics.csv";
  if (fs::exists(metrics_path)) {
    const Csv csv = read_csv(metrics_path);
    const int c_t = csv.col("time_s"), c_node = csv.col("node"), c_hit = csv.col("cache_hit_rate"),
              c_pit = csv.col("pit_available_rate"), c_rtt = csv.col("avg_rtt_ms");
    ChartSeries hit{"gateway hit rate", {}}, pit{"gateway PIT available", {}},
        rtt{"consumer avg RTT", {}};
    for (const auto& row : csv.rows) {
      const double t = std::stod(row[c_t]);
      if (row[c_node] == "gw" || row[c_node] == "r1") {
        if (!row[c_hit].empty()) hit.points.push_back({t, std::stod(row[c_hit])});
        if (!row[c_pit].empty()) pit.points.push_back({t, std::stod(row[c_pit])});
      }
      if (row[c_node] == "consumers" && !row[c_rtt].empty()) {
        rtt.points.push_back({t, std::stod(row[c_rtt])});
      }
    }
    if (hit.points.empty() && pit.points.empty() && rtt.points.empty()) {
      throw ConfigError("metrics.csv has no chartable rows: " + metrics_path);
    }
    if (!hit.points.empty()) {
      write_file(dir + "/hit_rate.svg",
                 line_chart_svg({hit}, {"cache hit rate", "time (s)", "hit rate"}));
    }
    if (!pit.points.empty()) {
      write_file(dir + "/pit_available.svg",
                 line_chart_svg({pit}, {"PIT available rate", "time (s)", "available"}));
    }
    if (!rtt.points.empty()) {
      write_file(dir + "/rtt.svg", line_chart_svg({rtt}, {"average RTT", "time (s)", "RTT (ms)"}));
    }
    return;
  }
  throw ConfigError("no metrics.csv under " + dir);
}

}  // namespace elda
