#pragma once

#include "slowlight/error.hpp"
#include "slowlight/io.hpp"
#include "slowlight/medium.hpp"
#include "slowlight/metrics.hpp"
#include "slowlight/signal.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace slowlight::cli {

struct GlobalOptions {
  bool plots = false;
  std::optional<std::filesystem::path> outdir;
};

struct BandComponent {
  double center_hz;
  IntensityTrace input;
  IntensityTrace output;
  double input_energy_fraction;
  double output_energy_fraction;
  double delay_centroid;
  double delay_peak;
};

struct SpectralPeak {
  double detuning_hz;
  double relative;  // to the global maximum
};

/// Every stage of the propagate / compensate / reshape chain for a config.
struct Simulation {
  SampledGrid grid;
  TransferFunction tf;
  IntensityTrace input;
  ComplexSpectrum input_spectrum;
  ComplexTrace output_field;
  IntensityTrace output;
  IntensityTrace rescaled;
  ComplexSpectrum output_spectrum;
  ComplexSpectrum compensated_spectrum;
  IntensityTrace reshaped;
  std::vector<BandComponent> components;
  std::vector<SpectralPeak> input_peaks;
  AnalysisReport output_report;    // analyze(input, output)
  AnalysisReport reshaped_report;  // analyze(input, reshaped)
};

Simulation simulate(const io::ExperimentConfig& config);

/// Local maxima above `threshold` x global max, parabolic-interpolated.
std::vector<SpectralPeak> spectral_peaks(const RealSpectrum& spectrum, double threshold = 1e-3);

// Subcommands. Each returns the process exit code: 0 success, 2 bad input
// (config, schema, file format), 3 numeric failure.
int run_simulate(const std::filesystem::path& config, const GlobalOptions& opts, std::ostream& out,
                 std::ostream& err);
int run_compensate(const std::filesystem::path& trace, const std::filesystem::path& transmission,
                   double reg_eps, const GlobalOptions& opts, std::ostream& out, std::ostream& err);
int run_fit(const std::filesystem::path& transmission, const GlobalOptions& opts, std::ostream& out,
            std::ostream& err);
int run_analyze(const std::filesystem::path& in, const std::filesystem::path& out_trace,
                const GlobalOptions& opts, std::ostream& out, std::ostream& err);
int run_kk(const std::filesystem::path& transmission, const GlobalOptions& opts, std::ostream& out,
           std::ostream& err);

/// Full command line front end.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

int exit_code_for(ErrorKind kind) noexcept;

}  // namespace slowlight::cli
