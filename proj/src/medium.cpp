#include "slowlight/medium.hpp"

#include "slowlight/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace slowlight {

namespace {
constexpr double kTransmissionFloor = 1e-4;
constexpr std::size_t kPhaseGridSize = 16384;
constexpr double kPhaseGridReach = 8.0;  // phase table covers +-8x the tabulated reach
}  // namespace

// ---------------------------------------------------------------------------
// Parametric model

LorentzianEitModel LorentzianEitModel::reference() {
  return {175e3, 2.0 * std::numbers::ln2, -std::log(0.615)};
}

void LorentzianEitModel::validate() const {
  if (!(gamma_hz > 0.0) || !std::isfinite(gamma_hz))
    fail(ErrorKind::ContractViolation, "lorentzian: gamma must be > 0");
  if (!(depth >= 0.0) || !std::isfinite(depth))
    fail(ErrorKind::ContractViolation, "lorentzian: depth must be >= 0");
  if (!(floor >= 0.0) || !std::isfinite(floor))
    fail(ErrorKind::ContractViolation, "lorentzian: floor must be >= 0");
}

double LorentzianEitModel::amplitude(double d) const {
  const double r2 = d * d / (gamma_hz * gamma_hz);
  return std::exp(-0.5 * floor - 0.5 * depth * r2 / (1.0 + r2));
}

double LorentzianEitModel::phase(double d) const {
  const double r = d / gamma_hz;
  return 0.5 * depth * r / (1.0 + r * r);
}

double LorentzianEitModel::transmission(double d) const {
  const double r2 = d * d / (gamma_hz * gamma_hz);
  return std::exp(-floor - depth * r2 / (1.0 + r2));
}

// ---------------------------------------------------------------------------
// Measured table

MeasuredSpectrum::MeasuredSpectrum(std::vector<double> detuning_hz, std::vector<double> transmission)
  : detuning_(std::move(detuning_hz)), transmission_(std::move(transmission)) {
  if (detuning_.size() != transmission_.size())
    fail(ErrorKind::Format, "measured spectrum: column lengths differ");
  if (detuning_.size() < 2)
    fail(ErrorKind::Format, "measured spectrum: need at least 2 points");
  for (std::size_t i = 0; i < detuning_.size(); ++i) {
    if (!std::isfinite(detuning_[i]))
      fail(ErrorKind::Format, "measured spectrum: non-finite detuning");
    if (i > 0 && !(detuning_[i] > detuning_[i - 1]))
      fail(ErrorKind::Format,
           "measured spectrum: detunings not strictly increasing at row " + std::to_string(i));
    if (!(transmission_[i] >= 0.0 && transmission_[i] <= 1.0))
      fail(ErrorKind::Format,
           "measured spectrum: transmission outside [0,1] at row " + std::to_string(i));
  }
}

bool MeasuredSpectrum::symmetric() const noexcept {
  const std::size_t n = detuning_.size();
  const double reach = std::max(std::abs(detuning_.front()), std::abs(detuning_.back()));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = n - 1 - i;
    if (std::abs(detuning_[i] + detuning_[j]) > 1e-9 * reach) return false;
    if (std::abs(transmission_[i] - transmission_[j]) > 1e-12) return false;
  }
  return true;
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
  : x_(std::move(x)), y_(std::move(y)), slope_(x_.size(), 0.0) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) fail(ErrorKind::ContractViolation, "monotone cubic: bad table");
  std::vector<double> h(n - 1), secant(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    secant[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  if (n == 2) {
    slope_[0] = slope_[1] = secant[0];
    return;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double a = secant[i - 1], b = secant[i];
    if (a * b <= 0.0) continue;
    const double w1 = 2.0 * h[i] + h[i - 1];
    const double w2 = h[i] + 2.0 * h[i - 1];
    slope_[i] = (w1 + w2) / (w1 / a + w2 / b);
  }
  const auto edge = [](double h0, double h1, double s0, double s1) {
    double m = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
    if (m * s0 <= 0.0) return 0.0;
    if (s0 * s1 <= 0.0 && std::abs(m) > 3.0 * std::abs(s0)) return 3.0 * s0;
    return m;
  };
  slope_[0] = edge(h[0], h[1], secant[0], secant[1]);
  slope_[n - 1] = edge(h[n - 2], h[n - 3], secant[n - 2], secant[n - 3]);
}

double MonotoneCubic::operator()(double x) const {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y_[i] + (t3 - 2 * t2 + t) * h * slope_[i] +
         (-2 * t3 + 3 * t2) * y_[i + 1] + (t3 - t2) * h * slope_[i + 1];
}

// ---------------------------------------------------------------------------
// Minimum phase

RealSpectrum kk_min_phase(const MeasuredSpectrum& measured, const SampledGrid& grid) {
  const std::size_t n = grid.size();
  if (grid.detuning(0) > measured.min_detuning() || grid.detuning(n - 1) < measured.max_detuning())
    fail(ErrorKind::ContractViolation, "kk_min_phase: grid does not span the tabulated range");
  const auto& tr = measured.transmissions();
  if (std::all_of(tr.begin(), tr.end(), [](double v) { return v == 0.0; }))
    fail(ErrorKind::DegenerateInput, "kk_min_phase: all-zero transmission");

  const MonotoneCubic interp(measured.detunings(), measured.transmissions());
  std::vector<Complex> work(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = std::max(interp(grid.detuning(k)), kTransmissionFloor);
    work[k] = 0.5 * std::log(t);
  }

  // Hilbert transform: multiply the transform of ln|A| by -i sgn(xi).
  detail::dft_inplace(work, -1);
  const double inv_n = 1.0 / static_cast<double>(n);
  work[0] = 0.0;
  work[n / 2] = 0.0;
  for (std::size_t j = 1; j < n / 2; ++j) {
    work[j] *= Complex(0.0, -inv_n);
    work[n - j] *= Complex(0.0, inv_n);
  }
  detail::dft_inplace(work, +1);

  std::vector<double> phase(n);
  for (std::size_t k = 0; k < n; ++k) phase[k] = work[k].real();

  if (measured.symmetric()) {
    const std::size_t c = grid.zero_bin();
    phase[c] = 0.0;
    phase[0] = 0.0;
    for (std::size_t j = 1; j < c; ++j) {
      const double odd = 0.5 * (phase[c + j] - phase[c - j]);
      phase[c + j] = odd;
      phase[c - j] = -odd;
    }
  }
  return RealSpectrum(grid, std::move(phase));
}

// ---------------------------------------------------------------------------
// Transfer function

struct TransferFunction::Measured {
  MeasuredSpectrum table;
  MonotoneCubic interp;
  PhasePolicy phase_policy;
  WingPolicy wings;
  std::vector<double> phase;  // on phase_grid detunings, when minimum phase
  double phase_f0 = 0.0;
  double phase_df = 0.0;

  double transmission(double d) const {
    if (wings == WingPolicy::Strict && (d < table.min_detuning() || d > table.max_detuning()))
      fail(ErrorKind::OutOfRange,
           "transfer function: detuning " + std::to_string(d) + " Hz outside tabulated range");
    return std::clamp(interp(d), 0.0, 1.0);
  }

  double phase_at(double d) const {
    if (phase_policy == PhasePolicy::None) return 0.0;
    const std::size_t n = phase.size();
    const double u = (d - phase_f0) / phase_df;
    // Beyond the table the minimum phase of a held-constant magnitude decays as 1/D.
    if (u < 1.0) {
      const double fe = phase_f0 + phase_df;
      return phase[1] * fe / d;
    }
    if (u > static_cast<double>(n - 1)) {
      const double fe = phase_f0 + static_cast<double>(n - 1) * phase_df;
      return phase[n - 1] * fe / d;
    }
    const auto i = std::min(static_cast<std::size_t>(u), n - 2);
    const double w = u - static_cast<double>(i);
    return (1.0 - w) * phase[i] + w * phase[i + 1];
  }
};

TransferFunction TransferFunction::lorentzian(const LorentzianEitModel& model) {
  model.validate();
  return TransferFunction(Source(model));
}

TransferFunction TransferFunction::measured(const MeasuredSpectrum& m, PhasePolicy policy,
                                            WingPolicy wings) {
  auto src = std::make_shared<Measured>(
    Measured{m, MonotoneCubic(m.detunings(), m.transmissions()), policy, wings, {}, 0.0, 0.0});
  if (policy == PhasePolicy::MinimumPhase) {
    const double reach = std::max(std::abs(m.min_detuning()), std::abs(m.max_detuning()));
    const double dt = 1.0 / (2.0 * kPhaseGridReach * reach);
    const auto grid = SampledGrid::centered(kPhaseGridSize, dt);
    auto phase = kk_min_phase(m, grid);
    src->phase = std::move(phase.values);
    src->phase_f0 = grid.detuning(0);
    src->phase_df = grid.df();
  }
  return TransferFunction(Source(std::shared_ptr<const Measured>(std::move(src))));
}

TransferFunction tf_from_measured(const MeasuredSpectrum& measured, PhasePolicy phase,
                                  WingPolicy wings) {
  return TransferFunction::measured(measured, phase, wings);
}

const LorentzianEitModel* TransferFunction::model() const noexcept {
  return std::get_if<LorentzianEitModel>(&source_);
}

bool TransferFunction::has_phase() const noexcept {
  if (model()) return true;
  return std::get<1>(source_)->phase_policy == PhasePolicy::MinimumPhase;
}

double TransferFunction::derivative_step() const noexcept {
  if (const auto* m = model()) return 1e-3 * m->gamma_hz;
  return std::get<1>(source_)->phase_df;
}

double TransferFunction::amplitude(double d) const {
  if (const auto* m = model()) return m->amplitude(d);
  return std::sqrt(std::get<1>(source_)->transmission(d));
}

double TransferFunction::phase(double d) const {
  if (const auto* m = model()) return m->phase(d);
  return std::get<1>(source_)->phase_at(d);
}

double TransferFunction::transmission(double d) const {
  if (const auto* m = model()) return m->transmission(d);
  return std::get<1>(source_)->transmission(d);
}

Complex TransferFunction::eval(double d) const { return std::polar(amplitude(d), phase(d)); }

std::vector<Complex> TransferFunction::sample(const SampledGrid& grid) const {
  std::vector<Complex> h(grid.size());
  for (std::size_t k = 0; k < h.size(); ++k) h[k] = eval(grid.detuning(k));
  return h;
}

std::vector<double> TransferFunction::sample_amplitude(const SampledGrid& grid) const {
  std::vector<double> a(grid.size());
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = amplitude(grid.detuning(k));
  return a;
}

Complex eval_transfer(const TransferFunction& tf, double detuning_hz) { return tf.eval(detuning_hz); }

double group_delay(const TransferFunction& tf, double detuning_hz, double step_hz) {
  if (!tf.has_phase())
    fail(ErrorKind::Unavailable, "group_delay: transfer function has no phase (policy none)");
  const double h = step_hz > 0.0 ? step_hz : tf.derivative_step();
  const double dphi = tf.phase(detuning_hz + h) - tf.phase(detuning_hz - h);
  return dphi / (2.0 * 2.0 * std::numbers::pi * h);
}

}  // namespace slowlight
