#pragma once

#include <string>
#include <vector>

namespace elda {

struct ChartSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct ChartOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 840;
  int height = 480;
  double y_min_hint = 0.0;  // y axis always includes this
};

// Static SVG line chart. Output is byte-deterministic: fixed layout, fixed
// number formatting, no timestamps.
std::string line_chart_svg(const std::vector<ChartSeries>& series, const ChartOptions& opts);

// Grouped bar chart; one bar group per category.
std::string bar_chart_svg(const std::vector<std::string>& categories,
                          const std::vector<ChartSeries>& groups, const ChartOptions& opts);

void write_file(const std::string& path, const std::string& content);

}  // namespace elda
