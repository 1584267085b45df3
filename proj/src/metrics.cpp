#include "slowlight/metrics.hpp"

#include "slowlight/error.hpp"
#include "slowlight/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace slowlight {

namespace {

void require_same_grid(const IntensityTrace& a, const IntensityTrace& b, const char* what) {
  if (!(a.grid == b.grid))
    fail(ErrorKind::ContractViolation, std::string(what) + ": traces are on different grids");
}

double total(const IntensityTrace& t, const char* what) {
  const double s = kernels::sum(t.samples);
  if (!(s > 0.0)) fail(ErrorKind::DegenerateInput, std::string(what) + ": zero-energy trace");
  return s;
}

double centroid(const IntensityTrace& t) {
  const auto times = t.grid.times();
  return kernels::dot(times, t.samples) / total(t, "delay");
}

double parabolic_offset(double left, double mid, double right) {
  const double den = left - 2.0 * mid + right;
  if (den >= 0.0) return 0.0;
  return 0.5 * (left - right) / den;
}

// c[tau] = sum_t a[t] b[t - tau], circular, raw lag ordering.
std::vector<double> cross_correlation(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  std::vector<Complex> fa(a.begin(), a.end()), fb(b.begin(), b.end());
  detail::dft_inplace(fa, -1);
  detail::dft_inplace(fb, -1);
  for (auto& z : fb) z = std::conj(z);
  std::vector<Complex> prod(n);
  kernels::complex_multiply(fa, fb, prod);
  detail::dft_inplace(prod, +1);
  std::vector<double> c(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = prod[i].real() * inv_n;
  return c;
}

}  // namespace

double peak_position(std::span<const double> v) {
  const auto it = std::max_element(v.begin(), v.end());
  const auto i = static_cast<std::size_t>(it - v.begin());
  if (i == 0 || i + 1 == v.size()) return static_cast<double>(i);
  return static_cast<double>(i) + parabolic_offset(v[i - 1], v[i], v[i + 1]);
}

double delay(const IntensityTrace& in, const IntensityTrace& out, DelayMethod method) {
  require_same_grid(in, out, "delay");
  total(in, "delay");
  total(out, "delay");
  const double dt = in.grid.dt();
  switch (method) {
    case DelayMethod::Centroid:
      return centroid(out) - centroid(in);
    case DelayMethod::Peak:
      return (peak_position(out.samples) - peak_position(in.samples)) * dt;
    case DelayMethod::Xcorr: {
      const auto c = cross_correlation(out.samples, in.samples);
      const std::size_t n = c.size();
      const auto i = static_cast<std::size_t>(std::max_element(c.begin(), c.end()) - c.begin());
      double off = parabolic_offset(c[(i + n - 1) % n], c[i], c[(i + 1) % n]);
      if (std::abs(off) < 1e-9) off = 0.0;  // FFT rounding, not signal
      const double lag = i < n / 2 ? static_cast<double>(i) : static_cast<double>(i) - static_cast<double>(n);
      return (lag + off) * dt;
    }
  }
  return 0.0;
}

double fidelity(const IntensityTrace& a, const IntensityTrace& b) {
  require_same_grid(a, b, "fidelity");
  total(a, "fidelity");
  total(b, "fidelity");
  const auto c = cross_correlation(a.samples, b.samples);
  const double norm = std::sqrt(kernels::sum_squares(std::span<const double>(a.samples)) *
                                kernels::sum_squares(std::span<const double>(b.samples)));
  const double best = *std::max_element(c.begin(), c.end());
  return std::clamp(best / norm, 0.0, 1.0);
}

std::vector<double> half_max_crossings(std::span<const double> v, double x0, double dx) {
  if (v.size() < 2) fail(ErrorKind::DegenerateInput, "fwhm: need at least two samples");
  const double peak = *std::max_element(v.begin(), v.end());
  if (!(peak > 0.0)) fail(ErrorKind::DegenerateInput, "fwhm: nonpositive maximum");
  const double half = 0.5 * peak;
  std::vector<double> xs;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const bool up = v[i] < half && v[i + 1] >= half;
    const bool down = v[i] >= half && v[i + 1] < half;
    if (up || down) {
      const double w = (half - v[i]) / (v[i + 1] - v[i]);
      xs.push_back(x0 + (static_cast<double>(i) + w) * dx);
    }
  }
  return xs;
}

double fwhm(std::span<const double> v, double x0, double dx) {
  auto xs = half_max_crossings(v, x0, dx);
  if (xs.size() < 2)
    fail(ErrorKind::DegenerateInput, "fwhm: half level not crossed on both sides of the peak");
  if (xs.size() > 2)
    throw AmbiguousWidthError("fwhm: half level crossed " + std::to_string(xs.size()) + " times",
                              std::move(xs));
  return xs[1] - xs[0];
}

double fwhm(const IntensityTrace& trace) {
  return fwhm(trace.samples, trace.grid.t_start(), trace.grid.dt());
}

double fwhm(const RealSpectrum& spectrum) {
  return fwhm(spectrum.values, spectrum.grid.detuning(0), spectrum.grid.df());
}

LossAndPeak loss_and_peak(const IntensityTrace& in, const IntensityTrace& out) {
  require_same_grid(in, out, "loss_and_peak");
  const double ein = total(in, "loss_and_peak");
  const double eout = kernels::sum(out.samples);
  const double pin = *std::max_element(in.samples.begin(), in.samples.end());
  const double pout = *std::max_element(out.samples.begin(), out.samples.end());
  return {1.0 - eout / ein, pout / pin};
}

AnalysisReport analyze(const IntensityTrace& in, const IntensityTrace& out) {
  AnalysisReport r;
  r.delay_centroid = delay(in, out, DelayMethod::Centroid);
  r.delay_peak = delay(in, out, DelayMethod::Peak);
  r.delay_xcorr = delay(in, out, DelayMethod::Xcorr);
  const auto width = [&r](std::span<const double> v, double x0, double dx) {
    try {
      return fwhm(v, x0, dx);
    } catch (const AmbiguousWidthError& e) {
      r.multimodal = true;
      return e.crossings().back() - e.crossings().front();
    }
  };
  r.fwhm_time = width(out.samples, out.grid.t_start(), out.grid.dt());
  const bool time_multimodal = r.multimodal;
  const auto spec = intensity_spectrum(forward_transform(amplitude_from_intensity(out)));
  r.fwhm_spectrum = width(spec.values, spec.grid.detuning(0), spec.grid.df());
  r.multimodal = time_multimodal;
  const auto lp = loss_and_peak(in, out);
  r.energy_loss = lp.energy_loss;
  r.peak_transmission = lp.peak_transmission;
  r.fidelity = fidelity(in, out);
  return r;
}

}  // namespace slowlight
