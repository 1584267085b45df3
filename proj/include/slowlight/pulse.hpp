#pragma once

#include "slowlight/signal.hpp"

namespace slowlight {

/// Gaussian intensity I(t) = exp[-ln2 (t - t_center)^2 / t_half^2]; the
/// intensity falls to one half at |t - t_center| = t_half (FWHM = 2 t_half).
struct GaussianSpec {
  double t_half = 2.97e-6;
  double t_center = 0.0;
};

/// Amplitude-modulated Gaussian I(t) = I_gauss(t) [1 + cos(2 pi mod_freq (t - t_center))]^2.
struct AmgSpec {
  GaussianSpec base;
  double mod_freq = 700e3;
};

/// Closed-form intensity spectrum I(D) = G(D) + [G(D - m) + G(D + m)] / 4 with
/// G(D) = exp[-ln2 D^2 / half_width^2]; mod_freq = 0 gives G alone.
struct SpectralShape {
  double half_width;
  double mod_freq = 0.0;
};

IntensityTrace gen_gaussian(const GaussianSpec& spec, const SampledGrid& grid);
IntensityTrace gen_amg(const AmgSpec& spec, const SampledGrid& grid);

double analytic_spectrum(const SpectralShape& shape, double detuning_hz);

/// Spectral half-width (Hz) of the pulse with intensity half-width t_half:
/// ln2 / (2 pi t_half).
double spectral_half_width(double t_half);

/// t_half whose intensity spectrum has the given FWHM (= 2 x half-width).
double t_half_from_spectral_fwhm(double fwhm_hz);

}  // namespace slowlight
