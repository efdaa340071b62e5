// Command-line front end: scenario runs, the detection sweep, accuracy and
// complexity studies, estimator calibration, insert-path benchmarks, and
// chart regeneration.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "elda/chart.hpp"
#include "elda/harness.hpp"
#include "elda/scenario.hpp"

using namespace elda;

namespace {

DetectorMode parse_mode(const std::string& s) {
  if (s == "elda") return DetectorMode::elda;
  if (s == "strawman") return DetectorMode::strawman;
  if (s == "freq") return DetectorMode::freq;
  throw ConfigError("unknown detector mode: " + s + " (use elda|strawman|freq)");
}

void print_report(const RunOutcome& out) {
  std::printf("scenario %s: alarms=%llu", out.spec.name.c_str(),
              static_cast<unsigned long long>(out.report.alarm_count));
  if (out.report.detection_rate) {
    std::printf(" detection_rate=%.3f", *out.report.detection_rate);
  } else {
    std::printf(" detection_rate=n/a");
  }
  std::printf(" false_positives=%llu mean_rtt_ms=%.3f\n",
              static_cast<unsigned long long>(out.report.false_positives),
              out.result.mean_rtt_ms);
  if (!out.dir.empty()) std::printf("artifacts: %s\n", out.dir.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ELDA cache-pollution-attack detection experiments"};
  app.require_subcommand(1);

  uint64_t seed = 0;
  double scale = 1.0;
  std::string out_dir = "out";
  std::string detector_mode = "elda";
  app.add_option("--seed", seed, "override scenario seed (0 = scenario default)");
  app.add_option("--scale", scale, "divide rates/capacities/catalog for fast runs");
  app.add_option("--out", out_dir, "artifact output directory");
  app.add_option("--detector", detector_mode, "detector mode: elda|strawman|freq");

  std::string scenario_name;
  auto* cmd_run = app.add_subcommand("run", "run one scenario (builtin name or JSON file)");
  cmd_run->add_option("scenario", scenario_name, "LDA1..6, FLA1..6, noattack-a07/a09/a11, or path")
      ->required();

  auto* cmd_sweep =
      app.add_subcommand("sweep", "run the 12 attack scenarios plus no-attack controls");

  uint32_t trials = 30;
  auto* cmd_accuracy = app.add_subcommand("accuracy", "estimation accuracy vs the exact counter");
  cmd_accuracy->add_option("--trials", trials, "seeds per grid cell");

  uint64_t inserts = 1000000;
  auto* cmd_complexity =
      app.add_subcommand("complexity", "operation-count verification of the search cost bounds");
  cmd_complexity->add_option("--inserts", inserts, "stream length");

  uint32_t cal_trials = 50;
  auto* cmd_calibrate = app.add_subcommand("calibrate", "fit the estimator constants");
  cmd_calibrate->add_option("--trials", cal_trials, "trials per cardinality");

  uint64_t bench_items = 1000000;
  auto* cmd_bench = app.add_subcommand("bench", "insert-path microbenchmarks");
  cmd_bench->add_option("--items", bench_items, "pre-generated interest count");

  std::string chart_dir;
  auto* cmd_chart = app.add_subcommand("chart", "regenerate charts from CSV artifacts");
  cmd_chart->add_option("dir", chart_dir, "run directory holding metrics.csv")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    RunOptions opts;
    opts.seed = seed;
    opts.scale = scale;
    opts.out_dir = out_dir;
    opts.detector = parse_mode(detector_mode);

    if (*cmd_run) {
      const auto spec = ScenarioSpec::resolve(scenario_name);
      print_report(harness_run(spec, opts));
    } else if (*cmd_sweep) {
      const auto sum = harness_sweep(opts);
      std::fputs(sum.csv().c_str(), stdout);
      std::printf("total: attacks=%llu detected=%llu false_positives=%llu control_epochs=%llu\n",
                  static_cast<unsigned long long>(sum.total_attacks),
                  static_cast<unsigned long long>(sum.total_detected),
                  static_cast<unsigned long long>(sum.total_false_positives),
                  static_cast<unsigned long long>(sum.total_control_epochs));
    } else if (*cmd_accuracy) {
      const auto table = harness_accuracy({256, 1024}, {1000, 10000, 100000}, trials, seed ? seed : 42);
      std::fputs(table.csv().c_str(), stdout);
      std::filesystem::create_directories(out_dir);
      write_file(out_dir + "/accuracy.csv", table.csv());
    } else if (*cmd_complexity) {
      const auto rep = harness_complexity(inserts, seed ? seed : 42);
      std::fputs(rep.text().c_str(), stdout);
    } else if (*cmd_calibrate) {
      const auto res = harness_calibrate(cal_trials, seed ? seed : 42);
      std::fputs(res.csv().c_str(), stdout);
      std::filesystem::create_directories(out_dir);
      write_file(out_dir + "/calibration.csv", res.csv());
      std::printf("shipped constants: kLfmCalibration=%.6f kHllFmCalibration=%.6f\n",
                  kLfmCalibration, kHllFmCalibration);
    } else if (*cmd_bench) {
      const auto rep = harness_bench(bench_items, seed ? seed : 42);
      std::fputs(rep.json().c_str(), stdout);
      std::filesystem::create_directories(out_dir);
      write_file(out_dir + "/bench.json", rep.json());
    } else if (*cmd_chart) {
      harness_charts(chart_dir);
      std::printf("charts written under %s\n", chart_dir.c_str());
    }
  } catch (const std::exception& e) {
    nlohmann::json err = {{"error", e.what()}};
    std::fprintf(stderr, "%s\n", err.dump().c_str());
    return 1;
  }
  return 0;
}
