#pragma once

#include "slowlight/signal.hpp"

#include <span>
#include <vector>

namespace slowlight {

enum class DelayMethod { Centroid, Peak, Xcorr };

/// Delay of `out` relative to `in` (positive: output later).
///   Centroid: difference of intensity-weighted mean times.
///   Peak:     difference of parabolic-interpolated maxima.
///   Xcorr:    parabolic-interpolated argmax of the circular cross-correlation.
double delay(const IntensityTrace& in, const IntensityTrace& out, DelayMethod method);

/// Peak normalized cross-correlation over integer shifts, in [0, 1].
double fidelity(const IntensityTrace& a, const IntensityTrace& b);

/// Width at half of the global maximum, crossings linearly interpolated on
/// the axis x0 + i dx. Throws AmbiguousWidthError when the half level is
/// crossed more than twice.
double fwhm(std::span<const double> values, double x0, double dx);
double fwhm(const IntensityTrace& trace);
double fwhm(const RealSpectrum& spectrum);

/// Half-level crossings in ascending order.
std::vector<double> half_max_crossings(std::span<const double> values, double x0, double dx);

struct LossAndPeak {
  double energy_loss;        // 1 - sum(out) / sum(in); negative means net gain
  double peak_transmission;  // max(out) / max(in)
};

LossAndPeak loss_and_peak(const IntensityTrace& in, const IntensityTrace& out);

struct AnalysisReport {
  double delay_centroid = 0.0;
  double delay_peak = 0.0;
  double delay_xcorr = 0.0;
  double fwhm_time = 0.0;      // of the analyzed (second) trace
  double fwhm_spectrum = 0.0;  // of |F[sqrt(I)]|^2 for the analyzed trace
  double energy_loss = 0.0;
  double peak_transmission = 0.0;
  double fidelity = 0.0;
  // Half level crossed more than twice in time; widths are then taken
  // between the outermost crossings and the centroid delay is dominated by
  // whichever spectral component survives the medium.
  bool multimodal = false;
};

AnalysisReport analyze(const IntensityTrace& in, const IntensityTrace& out);

/// Parabolic-interpolated position (in samples) of the global maximum.
double peak_position(std::span<const double> values);

}  // namespace slowlight
