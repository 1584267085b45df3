#include "slowlight/propagation.hpp"

#include "slowlight/error.hpp"
#include "slowlight/kernels.hpp"

#include <cmath>
#include <string>

namespace slowlight {

void check_guard_band(const ComplexTrace& trace) {
  const std::size_t n = trace.samples.size();
  const std::span<const Complex> all(trace.samples);
  const double total = kernels::sum_squares(all);
  if (total == 0.0) return;
  const double inner = kernels::sum_squares(all.subspan(n / 4, n / 2));
  const double outer_fraction = (total - inner) / total;
  if (outer_fraction > 1e-6)
    fail(ErrorKind::ContractViolation,
         "propagate: " + std::to_string(outer_fraction) +
           " of the input energy lies outside the central half of the grid");
}

ComplexSpectrum apply_transfer(const ComplexSpectrum& spec, const TransferFunction& tf) {
  const auto h = tf.sample(spec.grid);
  std::vector<Complex> out(spec.bins.size());
  kernels::complex_multiply(spec.bins, h, out);
  return ComplexSpectrum(spec.grid, std::move(out));
}

ComplexTrace propagate(const ComplexTrace& input, const TransferFunction& tf) {
  check_guard_band(input);
  return inverse_transform(apply_transfer(forward_transform(input), tf));
}

ComplexTrace propagate(const AmplitudeTrace& input, const TransferFunction& tf) {
  return propagate(ComplexTrace::from_real(input), tf);
}

RealSpectrum intensity_transfer(const ComplexSpectrum& input_spec, const TransferFunction& tf) {
  auto out = intensity_spectrum(input_spec);
  for (std::size_t k = 0; k < out.values.size(); ++k)
    out.values[k] *= tf.transmission(input_spec.grid.detuning(k));
  return out;
}

ComplexSpectrum band_window(const ComplexSpectrum& spec, double center_hz, double half_width_hz) {
  std::vector<Complex> w(spec.bins.size());
  for (std::size_t k = 0; k < w.size(); ++k)
  {
    const double offset = spec.grid.detuning(k) - center_hz;
    if (offset >= -half_width_hz && offset < half_width_hz) w[k] = spec.bins[k];
  }
  return ComplexSpectrum(spec.grid, std::move(w));
}

std::vector<ComplexTrace> decompose_bands(const ComplexSpectrum& spec,
                                          const std::vector<double>& centers_hz,
                                          double half_width_hz) {
  if (!(half_width_hz > 0.0)) fail(ErrorKind::InvalidBands, "decompose_bands: half_width must be > 0");
  for (std::size_t i = 0; i < centers_hz.size(); ++i)
    for (std::size_t j = i + 1; j < centers_hz.size(); ++j)
      if (!(std::abs(centers_hz[i] - centers_hz[j]) >= 2.0 * half_width_hz))
        fail(ErrorKind::InvalidBands, "decompose_bands: bands " + std::to_string(i) + " and " +
                                        std::to_string(j) + " overlap");
  std::vector<ComplexTrace> parts;
  parts.reserve(centers_hz.size());
  for (double c : centers_hz) parts.push_back(inverse_transform(band_window(spec, c, half_width_hz)));
  return parts;
}

}  // namespace slowlight
