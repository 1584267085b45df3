#include "slowlight/compensation.hpp"

#include "slowlight/error.hpp"
#include "slowlight/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace slowlight {

std::vector<double> compensation_gain(const SampledGrid& grid, const TransferFunction& tf,
                                      double reg_eps) {
  if (!(reg_eps >= 0.0) || !std::isfinite(reg_eps))
    fail(ErrorKind::ContractViolation, "compensate: reg_eps must be >= 0");
  const auto amp = tf.sample_amplitude(grid);
  const double peak = *std::max_element(amp.begin(), amp.end());
  const double eps = reg_eps * peak;
  std::vector<double> gain(amp.size());
  kernels::wiener_gain(amp, eps * eps, gain);
  return gain;
}

ComplexSpectrum compensate_spectrum(const ComplexSpectrum& out_spec, const TransferFunction& tf,
                                    double reg_eps) {
  const auto gain = compensation_gain(out_spec.grid, tf, reg_eps);
  if (reg_eps == 0.0) {
    std::vector<double> power(out_spec.bins.size());
    kernels::squared_magnitude(out_spec.bins, power);
    const double total = kernels::sum(power);
    for (std::size_t k = 0; k < power.size(); ++k) {
      if (gain[k] == 0.0 && power[k] > 1e-9 * total)
        fail(ErrorKind::DivisionBlowup,
             "compensate: zero transmission at " + std::to_string(out_spec.grid.detuning(k)) +
               " Hz carries output energy and reg_eps = 0");
    }
  }
  std::vector<Complex> out(out_spec.bins.size());
  kernels::complex_scale(out_spec.bins, gain, out);
  return ComplexSpectrum(out_spec.grid, std::move(out));
}

IntensityTrace reshape(const ComplexSpectrum& comp_spec) {
  return intensity_of(inverse_transform(comp_spec));
}

}  // namespace slowlight
