#pragma once

#include "slowlight/signal.hpp"

#include <memory>
#include <variant>
#include <vector>

namespace slowlight {

/// Weak-probe EIT window over a flat absorption floor:
///   A(D)   = exp[-floor/2 - (depth/2) D^2 / (gamma^2 + D^2)]
///   Phi(D) = (depth/2) gamma D / (gamma^2 + D^2)
/// gamma is the window HWHM in Hz. With depth = 2 ln2 the intensity
/// transmission is exactly half its peak at |D| = gamma.
struct LorentzianEitModel {
  double gamma_hz;
  double depth;
  double floor;

  /// Calibrated window: 350 kHz FWHM, 61.5 % peak transmission.
  static LorentzianEitModel reference();

  void validate() const;
  double amplitude(double detuning_hz) const;
  double phase(double detuning_hz) const;
  double transmission(double detuning_hz) const;
};

enum class PhasePolicy { None, MinimumPhase };
enum class WingPolicy { HoldEdge, Strict };

/// Tabulated intensity transmission |A(D)|^2.
class MeasuredSpectrum {
public:
  MeasuredSpectrum(std::vector<double> detuning_hz, std::vector<double> transmission);

  const std::vector<double>& detunings() const noexcept { return detuning_; }
  const std::vector<double>& transmissions() const noexcept { return transmission_; }
  std::size_t size() const noexcept { return detuning_.size(); }
  double min_detuning() const noexcept { return detuning_.front(); }
  double max_detuning() const noexcept { return detuning_.back(); }

  /// Detunings mirror about zero and values match their mirror partners.
  bool symmetric() const noexcept;

private:
  std::vector<double> detuning_;
  std::vector<double> transmission_;
};

/// Fritsch-Carlson monotone piecewise cubic; never overshoots the data.
class MonotoneCubic {
public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  /// Clamps x to the tabulated range.
  double operator()(double x) const;

private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> slope_;
};

/// Minimum phase of sqrt(transmission) on the grid's detuning bins: the
/// discrete Hilbert transform of ln|A| after flooring transmission at 1e-4.
RealSpectrum kk_min_phase(const MeasuredSpectrum& measured, const SampledGrid& grid);

/// Linear medium response H(D) = A(D) exp(i Phi(D)). Immutable; cheap to copy.
class TransferFunction {
public:
  static TransferFunction lorentzian(const LorentzianEitModel& model);
  static TransferFunction measured(const MeasuredSpectrum& measured, PhasePolicy phase,
                                   WingPolicy wings = WingPolicy::HoldEdge);

  Complex eval(double detuning_hz) const;
  double amplitude(double detuning_hz) const;
  /// Phi(D); zero when the phase policy is None.
  double phase(double detuning_hz) const;
  double transmission(double detuning_hz) const;

  bool has_phase() const noexcept;
  /// Default finite-difference step for group_delay.
  double derivative_step() const noexcept;

  /// H on the grid's centered detuning bins.
  std::vector<Complex> sample(const SampledGrid& grid) const;
  std::vector<double> sample_amplitude(const SampledGrid& grid) const;

  /// The parametric model, or nullptr for measured sources.
  const LorentzianEitModel* model() const noexcept;

  struct Measured;

private:
  using Source = std::variant<LorentzianEitModel, std::shared_ptr<const Measured>>;
  explicit TransferFunction(Source s) : source_(std::move(s)) {}
  Source source_;
};

TransferFunction tf_from_measured(const MeasuredSpectrum& measured, PhasePolicy phase,
                                  WingPolicy wings = WingPolicy::HoldEdge);

Complex eval_transfer(const TransferFunction& tf, double detuning_hz);

/// dPhi/domega at the detuning by central difference; positive is delay.
/// step_hz <= 0 selects tf.derivative_step().
double group_delay(const TransferFunction& tf, double detuning_hz, double step_hz = 0.0);

}  // namespace slowlight
