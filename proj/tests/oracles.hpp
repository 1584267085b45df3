#pragma once

// Test-only reference computations. Nothing here calls into the library's
// transform, medium or metrics code paths.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

// O(n^2) unitary DFT, exp(+i 2 pi j k / n), output on the centered axis
// (bin k <-> frequency index k - n/2).
inline std::vector<Complex> naive_forward(const std::vector<Complex>& x) {
  const std::size_t n = x.size();
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double m = static_cast<double>(k) - static_cast<double>(n / 2);
    Complex s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      s += x[j] * std::polar(1.0, 2.0 * kPi * m * static_cast<double>(j) / static_cast<double>(n));
    out[k] = s / std::sqrt(static_cast<double>(n));
  }
  return out;
}

// Composite Simpson on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels = 20000) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

// Lorentzian window written out independently of the library.
struct Window {
  double gamma, depth, floor;

  double transmission(double f) const {
    const double r2 = (f / gamma) * (f / gamma);
    return std::exp(-floor - depth * r2 / (1.0 + r2));
  }
  double phase(double f) const {
    const double r = f / gamma;
    return 0.5 * depth * r / (1.0 + r * r);
  }
  double group_delay(double f) const {
    const double r = f / gamma;
    return 0.5 * depth * (1.0 - r * r) / (2.0 * kPi * gamma * (1.0 + r * r) * (1.0 + r * r));
  }
};

inline Window reference_window() { return {175e3, 2.0 * kLn2, -std::log(0.615)}; }

// Gaussian intensity spectrum of a pulse with intensity half-width t_half.
inline double gaussian_spectrum(double f, double t_half) {
  const double half = kLn2 / (2.0 * kPi * t_half);
  return std::exp(-kLn2 * (f / half) * (f / half));
}

// Centroid delay of a chirp-free pulse through a linear filter: the mean
// group delay weighted by the output power spectrum.
inline double mean_group_delay(const Window& w, double t_half, double center = 0.0) {
  const double half = kLn2 / (2.0 * kPi * t_half);
  const double lo = center - 20.0 * half, hi = center + 20.0 * half;
  const auto weight = [&](double f) { return w.transmission(f) * gaussian_spectrum(f - center, t_half); };
  const double num = simpson([&](double f) { return w.group_delay(f) * weight(f); }, lo, hi);
  const double den = simpson(weight, lo, hi);
  return num / den;
}

// Half-max full width of a unimodal even function by bisection.
inline double bisect_fwhm(const std::function<double(double)>& f, double peak_x, double far) {
  const double half = 0.5 * f(peak_x);
  double lo = peak_x, hi = peak_x + far;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > half ? lo : hi) = mid;
  }
  return 2.0 * (0.5 * (lo + hi) - peak_x);
}

// Brute-force normalized overlap, max over integer circular shifts in
// [-max_shift, max_shift].
inline double brute_fidelity(const std::vector<double>& a, const std::vector<double>& b, int max_shift) {
  const int n = static_cast<int>(a.size());
  double ea = 0.0, eb = 0.0;
  for (int i = 0; i < n; ++i) {
    ea += a[i] * a[i];
    eb += b[i] * b[i];
  }
  double best = 0.0;
  for (int s = -max_shift; s <= max_shift; ++s) {
    double c = 0.0;
    for (int i = 0; i < n; ++i) c += a[i] * b[((i - s) % n + n) % n];
    best = std::max(best, c);
  }
  return best / std::sqrt(ea * eb);
}

inline std::vector<double> random_reals(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

inline std::vector<Complex> random_complex(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d;
  std::vector<Complex> v(n);
  for (auto& z : v) z = {d(rng), d(rng)};
  return v;
}

inline double rel_rms(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / den);
}

}  // namespace oracle
