#pragma once

#include "slowlight/medium.hpp"

#include <optional>
#include <vector>

namespace slowlight {

struct FitResult {
  LorentzianEitModel model;
  double rms_residual;
  int iterations;
  std::vector<double> history;  // best sum of squares after each simplex step
};

/// Least-squares fit of the parametric window to tabulated intensity
/// transmission. Without `init`, starts from the best point of a coarse grid
/// (gamma log-spaced over [min spacing, span], depth log-spaced over [0.1, 20],
/// floor over [0, 5]); then Nelder-Mead until the relative parameter spread
/// drops below 1e-8 or 10^4 iterations.
FitResult fit_lorentzian(const MeasuredSpectrum& measured,
                         const std::optional<LorentzianEitModel>& init = std::nullopt);

/// Sum of squared transmission residuals of `model` against the table.
double fit_objective(const MeasuredSpectrum& measured, const LorentzianEitModel& model);

}  // namespace slowlight
