#include "slowlight/fit.hpp"

#include "slowlight/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace slowlight {

namespace {

constexpr int kMaxIterations = 10000;
constexpr double kParamTolerance = 1e-8;

using Point = std::array<double, 3>;  // ln gamma, depth, floor

LorentzianEitModel to_model(const Point& p) {
  return {std::exp(p[0]), std::abs(p[1]), std::abs(p[2])};
}

struct Vertex {
  Point x;
  double f;
};

// T = exp(-floor) exp(-depth u), u = r^2 / (1 + r^2). For fixed (gamma, depth)
// the sum of squares is a quadratic in s = exp(-floor), so the floor axis
// costs three running sums instead of a pass over the table.
Point grid_start(const MeasuredSpectrum& m) {
  const auto& d = m.detunings();
  const auto& t = m.transmissions();
  double min_step = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < d.size(); ++i) min_step = std::min(min_step, d[i] - d[i - 1]);
  const double span = d.back() - d.front();
  constexpr int kGamma = 48, kDepth = 32, kFloor = 26;
  double tt = 0.0;
  for (double x : t) tt += x * x;
  std::vector<double> u(d.size());
  Point best{};
  double best_f = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGamma; ++i) {
    const double lg = std::log(min_step) + (std::log(span) - std::log(min_step)) * i / (kGamma - 1);
    const double gamma = std::exp(lg);
    for (std::size_t q = 0; q < d.size(); ++q) {
      const double r2 = (d[q] / gamma) * (d[q] / gamma);
      u[q] = r2 / (1.0 + r2);
    }
    for (int j = 0; j < kDepth; ++j) {
      const double depth = 0.1 * std::pow(200.0, static_cast<double>(j) / (kDepth - 1));
      double vv = 0.0, vt = 0.0;
      for (std::size_t q = 0; q < d.size(); ++q) {
        const double v = std::exp(-depth * u[q]);
        vv += v * v;
        vt += v * t[q];
      }
      for (int k = 0; k < kFloor; ++k) {
        const double floor = 5.0 * k / (kFloor - 1);
        const double sc = std::exp(-floor);
        const double f = sc * sc * vv - 2.0 * sc * vt + tt;
        if (f < best_f) {
          best_f = f;
          best = {lg, depth, floor};
        }
      }
    }
  }
  return best;
}

bool converged(const std::array<Vertex, 4>& s) {
  const auto best = to_model(s[0].x);
  const std::array<double, 3> ref{best.gamma_hz, best.depth, best.floor};
  for (std::size_t v = 1; v < s.size(); ++v) {
    const auto m = to_model(s[v].x);
    const std::array<double, 3> p{m.gamma_hz, m.depth, m.floor};
    for (std::size_t k = 0; k < 3; ++k)
      if (std::abs(p[k] - ref[k]) > kParamTolerance * std::max(std::abs(ref[k]), 1e-6)) return false;
  }
  return true;
}

// Nelder-Mead; the best vertex never worsens.
void simplex(const MeasuredSpectrum& m, Point start, FitResult& out) {
  const auto f = [&](const Point& p) { return fit_objective(m, to_model(p)); };
  std::array<Vertex, 4> s;
  s[0] = {start, f(start)};
  const Point step{0.1, std::max(0.1 * std::abs(start[1]), 0.05), std::max(0.1 * std::abs(start[2]), 0.05)};
  for (std::size_t k = 0; k < 3; ++k) {
    Point p = start;
    p[k] += step[k];
    s[k + 1] = {p, f(p)};
  }
  const auto order = [&] { std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; }); };
  order();
  while (out.iterations < kMaxIterations && !converged(s)) {
    ++out.iterations;
    Point c{};
    for (std::size_t v = 0; v < 3; ++v)
      for (std::size_t k = 0; k < 3; ++k) c[k] += s[v].x[k] / 3.0;
    const auto along = [&](double t) {
      Point p;
      for (std::size_t k = 0; k < 3; ++k) p[k] = c[k] + t * (s[3].x[k] - c[k]);
      return p;
    };
    const Point xr = along(-1.0);
    const double fr = f(xr);
    if (fr < s[0].f) {
      const Point xe = along(-2.0);
      const double fe = f(xe);
      s[3] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
    } else if (fr < s[2].f) {
      s[3] = {xr, fr};
    } else {
      const bool outside = fr < s[3].f;
      const Point xc = along(outside ? -0.5 : 0.5);
      const double fc = f(xc);
      if (fc < (outside ? fr : s[3].f)) {
        s[3] = {xc, fc};
      } else {
        for (std::size_t v = 1; v < 4; ++v) {
          for (std::size_t k = 0; k < 3; ++k) s[v].x[k] = s[0].x[k] + 0.5 * (s[v].x[k] - s[0].x[k]);
          s[v].f = f(s[v].x);
        }
      }
    }
    order();
    out.history.push_back(s[0].f);
  }
  out.model = to_model(s[0].x);
}

}  // namespace

double fit_objective(const MeasuredSpectrum& measured, const LorentzianEitModel& model) {
  const auto& d = measured.detunings();
  const auto& t = measured.transmissions();
  double sse = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double r = model.transmission(d[i]) - t[i];
    sse += r * r;
  }
  return sse;
}

FitResult fit_lorentzian(const MeasuredSpectrum& measured,
                         const std::optional<LorentzianEitModel>& init) {
  if (measured.size() < 8)
    fail(ErrorKind::ContractViolation, "fit: need at least 8 transmission points");
  const auto& t = measured.transmissions();
  const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
  if (*hi - *lo < 1e-6)
    fail(ErrorKind::Unidentifiable, "fit: transmission is flat, no window to fit");

  Point start;
  if (init) {
    init->validate();
    start = {std::log(init->gamma_hz), init->depth, init->floor};
  } else {
    start = grid_start(measured);
  }

  FitResult out{LorentzianEitModel{}, 0.0, 0, {}};
  simplex(measured, start, out);
  // One restart from the converged point clears simplex collapse.
  if (out.iterations < kMaxIterations)
    simplex(measured, {std::log(out.model.gamma_hz), out.model.depth, out.model.floor}, out);
  out.rms_residual = std::sqrt(fit_objective(measured, out.model) / static_cast<double>(measured.size()));
  return out;
}

}  // namespace slowlight
