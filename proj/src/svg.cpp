#include "slowlight/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace slowlight::svg {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  if (std::abs(v) < 1e-12) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct Viewport {
  double left, top, width, height;
  double x0, x1, y0, y1;

  double px(double x) const { return left + (x - x0) / (x1 - x0) * width; }
  double py(double y) const { return top + height - (y - y0) / (y1 - y0) * height; }
};

// Keep first/min/max/last per bucket so narrow peaks survive decimation.
std::vector<std::pair<double, double>> decimate(const std::vector<double>& x, const std::vector<double>& y,
                                                double x0, double x1) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
    if (x[i] >= x0 && x[i] <= x1) pts.emplace_back(x[i], y[i]);
  constexpr std::size_t kBuckets = 500;
  if (pts.size() <= 4 * kBuckets) return pts;
  std::vector<std::pair<double, double>> out;
  const std::size_t per = (pts.size() + kBuckets - 1) / kBuckets;
  for (std::size_t b = 0; b < pts.size(); b += per) {
    const std::size_t e = std::min(b + per, pts.size());
    auto lo = b, hi = b;
    for (std::size_t i = b; i < e; ++i) {
      if (pts[i].second < pts[lo].second) lo = i;
      if (pts[i].second > pts[hi].second) hi = i;
    }
    out.push_back(pts[b]);
    out.push_back(pts[std::min(lo, hi)]);
    out.push_back(pts[std::max(lo, hi)]);
    out.push_back(pts[e - 1]);
  }
  return out;
}

}  // namespace

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<double> nice_ticks(double lo, double hi, int target) {
  if (!(hi > lo)) return {lo};
  const double raw = (hi - lo) / std::max(target, 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0})
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step)
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  return ticks;
}

std::string render(const Chart& chart) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
  double y0 = 0.0, y1 = -std::numeric_limits<double>::infinity();
  for (const auto& s : chart.series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      const double x = s.x[i] * chart.x_scale;
      if (chart.x_min && x < *chart.x_min) continue;
      if (chart.x_max && x > *chart.x_max) continue;
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (chart.x_min) x0 = *chart.x_min;
  if (chart.x_max) x1 = *chart.x_max;
  if (!(x1 > x0)) { x0 = 0.0; x1 = 1.0; }
  if (!(y1 > y0)) y1 = y0 + 1.0;
  y1 += 0.05 * (y1 - y0);

  const Viewport vp{70.0, 40.0, chart.width - 90.0, chart.height - 90.0, x0, x1, y0, y1};
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(chart.width) +
         "\" height=\"" + std::to_string(chart.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(chart.width / 2.0) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
         xml_escape(chart.title) + "</text>\n";

  for (double t : nice_ticks(x0, x1)) {
    const double x = vp.px(t);
    out += "<line x1=\"" + num(x) + "\" y1=\"" + num(vp.top) + "\" x2=\"" + num(x) + "\" y2=\"" +
           num(vp.top + vp.height) + "\" stroke=\"#e5e5e5\"/>\n";
    out += "<text x=\"" + num(x) + "\" y=\"" + num(vp.top + vp.height + 16) +
           "\" text-anchor=\"middle\">" + tick_label(t) + "</text>\n";
  }
  for (double t : nice_ticks(y0, y1)) {
    const double y = vp.py(t);
    out += "<line x1=\"" + num(vp.left) + "\" y1=\"" + num(y) + "\" x2=\"" + num(vp.left + vp.width) +
           "\" y2=\"" + num(y) + "\" stroke=\"#e5e5e5\"/>\n";
    out += "<text x=\"" + num(vp.left - 6) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" +
           tick_label(t) + "</text>\n";
  }
  out += "<rect x=\"" + num(vp.left) + "\" y=\"" + num(vp.top) + "\" width=\"" + num(vp.width) +
         "\" height=\"" + num(vp.height) + "\" fill=\"none\" stroke=\"black\"/>\n";
  out += "<text x=\"" + num(vp.left + vp.width / 2) + "\" y=\"" + num(chart.height - 12.0) +
         "\" text-anchor=\"middle\">" + xml_escape(chart.x_label) + "</text>\n";
  out += "<text transform=\"translate(16," + num(vp.top + vp.height / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" + xml_escape(chart.y_label) + "</text>\n";

  int row = 0;
  for (const auto& s : chart.series) {
    std::vector<double> xs(s.x.size());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = s.x[i] * chart.x_scale;
    const auto pts = decimate(xs, s.y, x0, x1);
    out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"";
    if (s.dashed) out += " stroke-dasharray=\"5,3\"";
    out += " points=\"";
    for (const auto& [x, y] : pts) out += num(vp.px(x)) + "," + num(vp.py(y)) + " ";
    out += "\"/>\n";

    const double ly = vp.top + 14.0 + 16.0 * row++;
    const double lx = vp.left + vp.width - 150.0;
    out += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(lx + 20) + "\" y2=\"" +
           num(ly - 4) + "\" stroke=\"" + s.color + "\" stroke-width=\"2\"" +
           (s.dashed ? " stroke-dasharray=\"5,3\"" : "") + "/>\n";
    out += "<text x=\"" + num(lx + 26) + "\" y=\"" + num(ly) + "\">" + xml_escape(s.label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace slowlight::svg
