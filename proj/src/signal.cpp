#include "slowlight/signal.hpp"

#include "slowlight/error.hpp"
#include "slowlight/kernels.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <utility>

namespace slowlight {

SampledGrid::SampledGrid(std::size_t n_samples, double dt, double t_start)
  : n_(n_samples), dt_(dt), t_start_(t_start) {
  if (n_ < 64 || !std::has_single_bit(n_))
    fail(ErrorKind::ContractViolation,
         "grid: n_samples must be a power of two >= 64, got " + std::to_string(n_));
  if (!(dt_ > 0.0) || !std::isfinite(dt_))
    fail(ErrorKind::ContractViolation, "grid: dt must be positive and finite");
  if (!std::isfinite(t_start_))
    fail(ErrorKind::ContractViolation, "grid: t_start must be finite");
}

SampledGrid SampledGrid::centered(std::size_t n_samples, double dt) {
  return SampledGrid(n_samples, dt, -static_cast<double>(n_samples / 2) * dt);
}

std::vector<double> SampledGrid::times() const {
  std::vector<double> t(n_);
  for (std::size_t i = 0; i < n_; ++i) t[i] = time(i);
  return t;
}

std::vector<double> SampledGrid::detunings() const {
  std::vector<double> f(n_);
  for (std::size_t k = 0; k < n_; ++k) f[k] = detuning(k);
  return f;
}

SampledGrid default_grid(double t_half, double mod_freq) {
  if (!(t_half > 0.0)) fail(ErrorKind::ContractViolation, "default_grid: t_half must be > 0");
  const double spectral_fwhm = std::log(2.0) / (M_PI * t_half);
  const double dt = std::min(t_half / 64.0, 1.0 / (16.0 * (mod_freq + spectral_fwhm)));
  return SampledGrid::centered(16384, dt);
}

namespace {

template <class T>
void check_length(const SampledGrid& g, const std::vector<T>& v, const char* what) {
  if (v.size() != g.size())
    fail(ErrorKind::ContractViolation,
         std::string(what) + ": " + std::to_string(v.size()) + " samples on a grid of " +
           std::to_string(g.size()));
}

}  // namespace

AmplitudeTrace::AmplitudeTrace(SampledGrid g, std::vector<double> s)
  : grid(g), samples(std::move(s)) {
  check_length(grid, samples, "AmplitudeTrace");
  for (double v : samples)
    if (!(v >= 0.0)) fail(ErrorKind::InvalidData, "AmplitudeTrace: negative or NaN amplitude");
}

IntensityTrace::IntensityTrace(SampledGrid g, std::vector<double> s)
  : grid(g), samples(std::move(s)) {
  check_length(grid, samples, "IntensityTrace");
  for (double v : samples)
    if (!(v >= 0.0)) fail(ErrorKind::InvalidData, "IntensityTrace: negative or NaN intensity");
}

IntensityTrace IntensityTrace::clamped(SampledGrid g, std::vector<double> raw) {
  double peak = 0.0;
  for (double v : raw) peak = std::max(peak, v);
  const double floor = -1e-12 * (peak > 0.0 ? peak : 1.0);
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (std::isnan(raw[k]) || raw[k] < floor)
      fail(ErrorKind::InvalidData,
           "intensity sample " + std::to_string(k) + " is negative beyond the clamp threshold");
    if (raw[k] < 0.0) raw[k] = 0.0;
  }
  return IntensityTrace(g, std::move(raw));
}

ComplexTrace::ComplexTrace(SampledGrid g, std::vector<Complex> s)
  : grid(g), samples(std::move(s)) {
  check_length(grid, samples, "ComplexTrace");
}

ComplexTrace ComplexTrace::from_real(const AmplitudeTrace& a) {
  std::vector<Complex> s(a.samples.begin(), a.samples.end());
  return ComplexTrace(a.grid, std::move(s));
}

ComplexSpectrum::ComplexSpectrum(SampledGrid g, std::vector<Complex> b)
  : grid(g), bins(std::move(b)) {
  check_length(grid, bins, "ComplexSpectrum");
}

RealSpectrum::RealSpectrum(SampledGrid g, std::vector<double> v)
  : grid(g), values(std::move(v)) {
  check_length(grid, values, "RealSpectrum");
}

namespace detail {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is.
fftw_plan plan_for(std::size_t n, int sign) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(n, sign);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::vector<Complex> scratch(n);
  auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), p, p,
                                    sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan) fail(ErrorKind::ContractViolation, "fftw: planning failed");
  cache.emplace(key, plan);
  return plan;
}

}  // namespace

void dft_inplace(std::span<Complex> data, int sign) {
  if (data.empty()) return;
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan_for(data.size(), sign), p, p);
}

}  // namespace detail

namespace {

// Raw DFT ordering (bin 0 = DC) <-> centered ordering (bin n/2 = DC).
void rotate_to_centered(std::vector<Complex>& v) {
  std::rotate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2), v.end());
}

ComplexSpectrum forward_impl(const SampledGrid& g, std::vector<Complex> data) {
  detail::dft_inplace(data, +1);
  const double scale = 1.0 / std::sqrt(static_cast<double>(g.size()));
  for (auto& z : data) z *= scale;
  rotate_to_centered(data);
  return ComplexSpectrum(g, std::move(data));
}

}  // namespace

ComplexSpectrum forward_transform(const ComplexTrace& trace) {
  if (trace.samples.size() != trace.grid.size())
    fail(ErrorKind::ContractViolation, "forward_transform: length mismatch with grid");
  return forward_impl(trace.grid, trace.samples);
}

ComplexSpectrum forward_transform(const AmplitudeTrace& trace) {
  if (trace.samples.size() != trace.grid.size())
    fail(ErrorKind::ContractViolation, "forward_transform: length mismatch with grid");
  return forward_impl(trace.grid, std::vector<Complex>(trace.samples.begin(), trace.samples.end()));
}

ComplexTrace inverse_transform(const ComplexSpectrum& spec) {
  if (spec.bins.size() != spec.grid.size())
    fail(ErrorKind::ContractViolation, "inverse_transform: length mismatch with grid");
  std::vector<Complex> data = spec.bins;
  // Centered -> raw is the same half rotation for even n.
  rotate_to_centered(data);
  detail::dft_inplace(data, -1);
  const double scale = 1.0 / std::sqrt(static_cast<double>(spec.grid.size()));
  for (auto& z : data) z *= scale;
  return ComplexTrace(spec.grid, std::move(data));
}

AmplitudeTrace amplitude_from_intensity(const IntensityTrace& i) {
  std::vector<double> e(i.samples.size());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = std::sqrt(i.samples[k]);
  return AmplitudeTrace(i.grid, std::move(e));
}

IntensityTrace intensity_of(const AmplitudeTrace& a) {
  std::vector<double> out(a.samples.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a.samples[k] * a.samples[k];
  return IntensityTrace(a.grid, std::move(out));
}

IntensityTrace intensity_of(const ComplexTrace& c) {
  std::vector<double> out(c.samples.size());
  kernels::squared_magnitude(c.samples, out);
  return IntensityTrace(c.grid, std::move(out));
}

RealSpectrum intensity_spectrum(const ComplexSpectrum& s) {
  std::vector<double> out(s.bins.size());
  kernels::squared_magnitude(s.bins, out);
  return RealSpectrum(s.grid, std::move(out));
}

double energy(const ComplexTrace& t) { return kernels::sum_squares(t.samples) * t.grid.dt(); }
double energy(const AmplitudeTrace& t) {
  return kernels::sum_squares(std::span<const double>(t.samples)) * t.grid.dt();
}
double energy(const ComplexSpectrum& s) { return kernels::sum_squares(s.bins) * s.grid.dt(); }

}  // namespace slowlight
