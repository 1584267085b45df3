#pragma once

#include "slowlight/medium.hpp"
#include "slowlight/signal.hpp"

namespace slowlight {

inline constexpr double kDefaultRegEps = 1e-3;

/// Undo the medium's absorption bin by bin:
///   E_comp(D) = E_out(D) A(D) / (A(D)^2 + eps^2),  eps = reg_eps * max A,
/// where max is over the grid. The gain is real and nonnegative, so the
/// output phase (and with it the dispersive timing) is kept. Only |A| of
/// the transfer function is used.
ComplexSpectrum compensate_spectrum(const ComplexSpectrum& out_spec, const TransferFunction& tf,
                                    double reg_eps = kDefaultRegEps);

/// Bin gains A / (A^2 + eps^2) used by compensate_spectrum.
std::vector<double> compensation_gain(const SampledGrid& grid, const TransferFunction& tf,
                                      double reg_eps);

/// |inverse_transform(comp_spec)|^2.
IntensityTrace reshape(const ComplexSpectrum& comp_spec);

}  // namespace slowlight
