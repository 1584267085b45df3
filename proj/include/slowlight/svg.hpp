#pragma once

#include <optional>
#include <string>
#include <vector>

namespace slowlight::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool dashed = false;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  double x_scale = 1.0;  // data x multiplied by this before plotting (e.g. 1e6 for us)
  std::optional<double> x_min, x_max;
  std::vector<Series> series;
  int width = 720;
  int height = 420;
};

/// Standalone SVG document with axes, ticks, legend and one polyline per
/// series. Series longer than ~2000 points are decimated by min/max buckets.
std::string render(const Chart& chart);

std::string xml_escape(const std::string& s);

/// Roughly `target` round-numbered ticks covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target = 6);

}  // namespace slowlight::svg
