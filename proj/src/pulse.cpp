#include "slowlight/pulse.hpp"

#include "slowlight/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace slowlight {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kTruncationLimit = 1e-6;

void check_envelope_fits(const GaussianSpec& spec, const SampledGrid& grid) {
  if (!(spec.t_half > 0.0)) fail(ErrorKind::ContractViolation, "pulse: t_half must be > 0");
  if (grid.span() < 8.0 * spec.t_half)
    fail(ErrorKind::Truncation, "pulse: grid span shorter than 8 t_half");
  // Energy of exp(-ln2 t^2/T^2) beyond a one-sided distance a is
  // erfc(sqrt(ln2) a / T) / 2 of the total.
  const double t_end = grid.time(grid.size() - 1) + grid.dt();
  const double scale = std::sqrt(kLn2) / spec.t_half;
  const double lost = 0.5 * std::erfc(scale * (t_end - spec.t_center)) +
                      0.5 * std::erfc(scale * (spec.t_center - grid.t_start()));
  if (lost > kTruncationLimit)
    fail(ErrorKind::Truncation,
         "pulse: " + std::to_string(lost) + " of the pulse energy falls outside the grid");
}

}  // namespace

IntensityTrace gen_gaussian(const GaussianSpec& spec, const SampledGrid& grid) {
  check_envelope_fits(spec, grid);
  std::vector<double> s(grid.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double x = (grid.time(i) - spec.t_center) / spec.t_half;
    s[i] = std::exp(-kLn2 * x * x);
  }
  return IntensityTrace(grid, std::move(s));
}

IntensityTrace gen_amg(const AmgSpec& spec, const SampledGrid& grid) {
  check_envelope_fits(spec.base, grid);
  if (!(spec.mod_freq > 0.0)) fail(ErrorKind::ContractViolation, "amg: mod_freq must be > 0");
  if (1.0 / grid.dt() < 8.0 * spec.mod_freq)
    fail(ErrorKind::Aliasing, "amg: sampling rate below 8 x modulation frequency");
  std::vector<double> s(grid.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double tau = grid.time(i) - spec.base.t_center;
    const double x = tau / spec.base.t_half;
    const double m = 1.0 + std::cos(2.0 * std::numbers::pi * spec.mod_freq * tau);
    s[i] = std::exp(-kLn2 * x * x) * m * m;
  }
  return IntensityTrace(grid, std::move(s));
}

double analytic_spectrum(const SpectralShape& shape, double detuning_hz) {
  const auto g = [&](double d) {
    const double x = d / shape.half_width;
    return std::exp(-kLn2 * x * x);
  };
  double v = g(detuning_hz);
  if (shape.mod_freq != 0.0)
    v += 0.25 * (g(detuning_hz - shape.mod_freq) + g(detuning_hz + shape.mod_freq));
  return v;
}

double spectral_half_width(double t_half) {
  return kLn2 / (2.0 * std::numbers::pi * t_half);
}

double t_half_from_spectral_fwhm(double fwhm_hz) {
  if (!(fwhm_hz > 0.0)) fail(ErrorKind::ContractViolation, "spectral FWHM must be > 0");
  return kLn2 / (std::numbers::pi * fwhm_hz);
}

}  // namespace slowlight
