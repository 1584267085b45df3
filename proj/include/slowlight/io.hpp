#pragma once

#include "slowlight/medium.hpp"
#include "slowlight/metrics.hpp"
#include "slowlight/signal.hpp"

#include <filesystem>
#include "json.hpp"
#include <optional>
#include <string>
#include <vector>

namespace slowlight::io {

/// "%.9g" - every number written by the toolkit goes through this.
std::string format_number(double v);

/// Two-column numeric table with its header (comment lines dropped).
struct Table {
  std::vector<std::string> header;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<int> lines;  // 1-based source line per row
  int header_line = 0;
};

Table parse_table(const std::string& text, const std::string& origin);
Table read_table(const std::filesystem::path& path);

void write_trace_csv(const std::filesystem::path& path, const IntensityTrace& trace);
void write_spectrum_csv(const std::filesystem::path& path, const RealSpectrum& spectrum);
void write_spectrum_csv(const std::filesystem::path& path, const std::vector<double>& detuning_hz,
                        const std::vector<double>& value);

/// Trace CSV (time_s,intensity) on a power-of-two grid. Exactly uniform
/// power-of-two inputs are kept as is; otherwise samples are linearly
/// resampled onto n = bit_ceil(max(rows, 64)) points over the same window.
IntensityTrace read_trace_csv(const std::filesystem::path& path);
IntensityTrace trace_from_table(const Table& table, const std::string& origin);

/// Transmission CSV (detuning_hz,value).
MeasuredSpectrum read_transmission_csv(const std::filesystem::path& path);
MeasuredSpectrum spectrum_from_table(const Table& table, const std::string& origin);

/// Linear interpolation of `trace` onto `grid`, zero outside its window.
IntensityTrace resample(const IntensityTrace& trace, const SampledGrid& grid);

nlohmann::ordered_json to_json(const AnalysisReport& r);
AnalysisReport report_from_json(const nlohmann::ordered_json& j);

/// Rounds to 9 significant digits so the JSON text is stable.
double rounded(double v);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Experiment configuration: flat "section.key = value" lines, '#' comments.

enum class PulseKind { Gaussian, Amg, File };
enum class MediumKind { Lorentzian, Measured };

struct ExperimentConfig {
  std::size_t n_samples = 16384;
  std::optional<double> dt;  // nullopt = auto
  PulseKind pulse_kind = PulseKind::Gaussian;
  double t_half = 2.97e-6;
  double mod_freq = 700e3;
  double t_center = 0.0;
  std::filesystem::path pulse_path;
  MediumKind medium_kind = MediumKind::Lorentzian;
  LorentzianEitModel model = LorentzianEitModel::reference();
  std::filesystem::path medium_path;
  PhasePolicy phase_policy = PhasePolicy::MinimumPhase;
  WingPolicy wing_policy = WingPolicy::HoldEdge;
  double reg_eps = 1e-3;
  std::optional<std::vector<double>> centers;
  std::optional<double> half_width;
  std::filesystem::path output_dir = "out";

  std::vector<double> band_centers() const;
  double band_half_width() const;
};

/// Relative paths resolve against base_dir. Throws ConfigError.
ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
ExperimentConfig read_config(const std::filesystem::path& path);

}  // namespace slowlight::io
