#pragma once

#include "slowlight/medium.hpp"
#include "slowlight/signal.hpp"

#include <vector>

namespace slowlight {

/// Output field inverse_transform(H * forward_transform(input)).
/// The input must keep all but 1e-6 of its energy inside the central half of
/// the grid, since the transform-domain product is a circular convolution.
ComplexTrace propagate(const ComplexTrace& input, const TransferFunction& tf);
ComplexTrace propagate(const AmplitudeTrace& input, const TransferFunction& tf);

/// Spectrum-domain form of propagate.
ComplexSpectrum apply_transfer(const ComplexSpectrum& spec, const TransferFunction& tf);

/// |A(D)|^2 |E_in(D)|^2.
RealSpectrum intensity_transfer(const ComplexSpectrum& input_spec, const TransferFunction& tf);

/// Bin mask of [center - half_width, center + half_width) applied to spec.
ComplexSpectrum band_window(const ComplexSpectrum& spec, double center_hz, double half_width_hz);

/// One time-domain component per band. Bands may touch but not overlap:
/// |c_i - c_j| >= 2 half_width; the half-open windows give every bin to at
/// most one band.
std::vector<ComplexTrace> decompose_bands(const ComplexSpectrum& spec,
                                          const std::vector<double>& centers_hz,
                                          double half_width_hz);

/// Throws ContractViolation when more than 1e-6 of the energy lies in the
/// outer half of the grid.
void check_guard_band(const ComplexTrace& trace);

}  // namespace slowlight
