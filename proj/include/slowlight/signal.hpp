#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace slowlight {

using Complex = std::complex<double>;

/// Uniform time grid and the frequency axis it induces.
///
/// Frequency bins are stored centered: bin k has detuning (k - n/2) * df, so
/// bin n/2 is the carrier (zero detuning).
class SampledGrid {
public:
  SampledGrid(std::size_t n_samples, double dt, double t_start);

  /// Grid of n samples whose t = 0 falls on sample n/2.
  static SampledGrid centered(std::size_t n_samples, double dt);

  std::size_t size() const noexcept { return n_; }
  double dt() const noexcept { return dt_; }
  double t_start() const noexcept { return t_start_; }
  double df() const noexcept { return 1.0 / (static_cast<double>(n_) * dt_); }
  double span() const noexcept { return static_cast<double>(n_) * dt_; }

  double time(std::size_t i) const noexcept {
    return t_start_ + static_cast<double>(i) * dt_;
  }
  double detuning(std::size_t k) const noexcept {
    return (static_cast<double>(k) - static_cast<double>(n_ / 2)) * df();
  }
  std::size_t zero_bin() const noexcept { return n_ / 2; }

  std::vector<double> times() const;
  std::vector<double> detunings() const;

  bool operator==(const SampledGrid&) const = default;

private:
  std::size_t n_;
  double dt_;
  double t_start_;
};

/// Grid sized for a pulse of intensity half-width `t_half` carrying sidebands
/// at +-`mod_freq`: n = 16384, dt = min(t_half / 64, 1 / (16 (mod_freq + FWHM))).
SampledGrid default_grid(double t_half, double mod_freq = 0.0);

struct AmplitudeTrace {
  SampledGrid grid;
  std::vector<double> samples;

  AmplitudeTrace(SampledGrid g, std::vector<double> s);
};

struct IntensityTrace {
  SampledGrid grid;
  std::vector<double> samples;

  IntensityTrace(SampledGrid g, std::vector<double> s);

  /// Accepts raw readings: negatives no deeper than 1e-12 of the peak are
  /// clamped to zero; anything below throws InvalidData.
  static IntensityTrace clamped(SampledGrid g, std::vector<double> raw);
};

struct ComplexTrace {
  SampledGrid grid;
  std::vector<Complex> samples;

  ComplexTrace(SampledGrid g, std::vector<Complex> s);
  static ComplexTrace from_real(const AmplitudeTrace& a);
};

/// Field spectrum on the centered detuning axis.
struct ComplexSpectrum {
  SampledGrid grid;
  std::vector<Complex> bins;

  ComplexSpectrum(SampledGrid g, std::vector<Complex> b);
};

/// Real-valued quantity on the centered detuning axis (intensity spectral
/// density, transmission, phase).
struct RealSpectrum {
  SampledGrid grid;
  std::vector<double> values;

  RealSpectrum(SampledGrid g, std::vector<double> v);
};

// Unitary DFT with the physics sign convention: the forward transform uses
// exp(+i 2 pi f t), so a positive phase slope dPhi/domega delays a pulse.
// inverse_transform(forward_transform(x)) == x.
ComplexSpectrum forward_transform(const ComplexTrace& trace);
ComplexSpectrum forward_transform(const AmplitudeTrace& trace);
ComplexTrace inverse_transform(const ComplexSpectrum& spec);

AmplitudeTrace amplitude_from_intensity(const IntensityTrace& i);
IntensityTrace intensity_of(const AmplitudeTrace& a);
IntensityTrace intensity_of(const ComplexTrace& c);
RealSpectrum intensity_spectrum(const ComplexSpectrum& s);

// Energies under the unitary convention: sum |x|^2 dt on both sides.
double energy(const ComplexTrace& t);
double energy(const AmplitudeTrace& t);
double energy(const ComplexSpectrum& s);

namespace detail {
// Unnormalized in-place complex DFT; sign is the exponent sign.
void dft_inplace(std::span<Complex> data, int sign);
}  // namespace detail

}  // namespace slowlight
