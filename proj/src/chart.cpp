#include "elda/chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "elda/errors.hpp"

namespace elda {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                          "#8c564b", "#17becf", "#7f7f7f", "#bcbd22", "#e377c2"};
constexpr int kPaletteSize = 10;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string coord(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Round step to 1/2/5 * 10^k for readable axis ticks.
double nice_step(double range, int target_ticks) {
  if (range <= 0) return 1.0;
  const double raw = range / target_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  double step;
  if (frac <= 1.0) step = 1.0;
  else if (frac <= 2.0) step = 2.0;
  else if (frac <= 5.0) step = 5.0;
  else step = 10.0;
  return step * mag;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  double x0, y0, x1, y1;  // plot rectangle in svg coords (y grows down)
  double xmin, xmax, ymin, ymax;

  double px(double x) const { return x0 + (x - xmin) / (xmax - xmin) * (x1 - x0); }
  double py(double y) const { return y1 - (y - ymin) / (ymax - ymin) * (y1 - y0); }
};

void append_header(std::string& svg, const ChartOptions& o) {
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(o.width) +
         "\" height=\"" + std::to_string(o.height) + "\" font-family=\"Helvetica,Arial,sans-serif\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + std::to_string(o.width / 2) +
         "\" y=\"24\" font-size=\"16\" text-anchor=\"middle\">" + escape(o.title) + "</text>\n";
}

void append_axes(std::string& svg, const Frame& f, const ChartOptions& o, bool x_ticks) {
  svg += "<rect x=\"" + coord(f.x0) + "\" y=\"" + coord(f.y0) + "\" width=\"" +
         coord(f.x1 - f.x0) + "\" height=\"" + coord(f.y1 - f.y0) +
         "\" fill=\"none\" stroke=\"#333333\"/>\n";
  const double ystep = nice_step(f.ymax - f.ymin, 6);
  for (double v = std::ceil(f.ymin / ystep) * ystep; v <= f.ymax + 1e-12; v += ystep) {
    const double y = f.py(v);
    svg += "<line x1=\"" + coord(f.x0) + "\" y1=\"" + coord(y) + "\" x2=\"" + coord(f.x1) +
           "\" y2=\"" + coord(y) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + coord(f.x0 - 6) + "\" y=\"" + coord(y + 4) +
           "\" font-size=\"11\" text-anchor=\"end\">" + num(v) + "</text>\n";
  }
  if (x_ticks) {
    const double xstep = nice_step(f.xmax - f.xmin, 8);
    for (double v = std::ceil(f.xmin / xstep) * xstep; v <= f.xmax + 1e-12; v += xstep) {
      const double x = f.px(v);
      svg += "<line x1=\"" + coord(x) + "\" y1=\"" + coord(f.y1) + "\" x2=\"" + coord(x) +
             "\" y2=\"" + coord(f.y1 + 4) + "\" stroke=\"#333333\"/>\n";
      svg += "<text x=\"" + coord(x) + "\" y=\"" + coord(f.y1 + 18) +
             "\" font-size=\"11\" text-anchor=\"middle\">" + num(v) + "</text>\n";
    }
  }
  svg += "<text x=\"" + coord((f.x0 + f.x1) / 2) + "\" y=\"" +
         coord(f.y1 + 36) + "\" font-size=\"12\" text-anchor=\"middle\">" + escape(o.x_label) +
         "</text>\n";
  svg += "<text x=\"16\" y=\"" + coord((f.y0 + f.y1) / 2) +
         "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         coord((f.y0 + f.y1) / 2) + ")\">" + escape(o.y_label) + "</text>\n";
}

void append_legend(std::string& svg, const Frame& f, const std::vector<ChartSeries>& series) {
  double y = f.y0 + 14;
  for (size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % kPaletteSize];
    svg += "<line x1=\"" + coord(f.x1 - 150) + "\" y1=\"" + coord(y - 4) + "\" x2=\"" +
           coord(f.x1 - 130) + "\" y2=\"" + coord(y - 4) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + coord(f.x1 - 124) + "\" y=\"" + coord(y) + "\" font-size=\"11\">" +
           escape(series[s].label) + "</text>\n";
    y += 16;
  }
}

}  // namespace

std::string line_chart_svg(const std::vector<ChartSeries>& series, const ChartOptions& opts) {
  if (series.empty()) throw ConfigError("chart needs at least one series");
  bool any_point = false;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = opts.y_min_hint, ymax = -std::numeric_limits<double>::infinity();
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      any_point = true;
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!any_point) throw ConfigError("chart series are empty");
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  ymax += (ymax - ymin) * 0.05;

  Frame f{64, 40, opts.width - 20.0, opts.height - 56.0, xmin, xmax, ymin, ymax};
  std::string svg;
  append_header(svg, opts);
  append_axes(svg, f, opts, true);
  for (size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % kPaletteSize];
    std::string d;
    bool first = true;
    for (const auto& [x, y] : series[s].points) {
      d += (first ? "M" : "L");
      d += coord(f.px(x));
      d += ' ';
      d += coord(f.py(y));
      first = false;
    }
    svg += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\"/>\n";
  }
  append_legend(svg, f, series);
  svg += "</svg>\n";
  return svg;
}

std::string bar_chart_svg(const std::vector<std::string>& categories,
                          const std::vector<ChartSeries>& groups, const ChartOptions& opts) {
  if (categories.empty() || groups.empty()) throw ConfigError("bar chart needs data");
  double ymin = opts.y_min_hint, ymax = -std::numeric_limits<double>::infinity();
  for (const auto& g : groups) {
    for (const auto& [x, y] : g.points) {
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (ymax <= ymin) ymax = ymin + 1;
  ymax += (ymax - ymin) * 0.08;

  Frame f{64, 40, opts.width - 20.0, opts.height - 56.0, 0.0,
          static_cast<double>(categories.size()), ymin, ymax};
  std::string svg;
  append_header(svg, opts);
  append_axes(svg, f, opts, false);

  const double slot = (f.x1 - f.x0) / categories.size();
  const double bar_w = slot * 0.8 / groups.size();
  for (size_t c = 0; c < categories.size(); ++c) {
    for (size_t g = 0; g < groups.size(); ++g) {
      if (c >= groups[g].points.size()) continue;
      const double v = groups[g].points[c].second;
      const double x = f.x0 + slot * c + slot * 0.1 + bar_w * g;
      const double y = f.py(v);
      svg += "<rect x=\"" + coord(x) + "\" y=\"" + coord(std::min(y, f.py(0.0))) + "\" width=\"" +
             coord(bar_w) + "\" height=\"" + coord(std::fabs(f.py(0.0) - y)) + "\" fill=\"" +
             kPalette[g % kPaletteSize] + "\"/>\n";
    }
    svg += "<text x=\"" + coord(f.x0 + slot * c + slot / 2) + "\" y=\"" + coord(f.y1 + 16) +
           "\" font-size=\"11\" text-anchor=\"middle\">" + escape(categories[c]) + "</text>\n";
  }
  append_legend(svg, f, groups);
  svg += "</svg>\n";
  return svg;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << content;
}

}  // namespace elda
