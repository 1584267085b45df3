#include "slowlight/io.hpp"

#include "slowlight/error.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace slowlight::io {

namespace fs = std::filesystem;

std::string format_number(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

double rounded(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_number(v).c_str(), nullptr);
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(0, "cannot write " + path.string());
  out << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::optional<double> parse_double(std::string_view s) {
  const std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  double v = 0.0;
  const char* first = t.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::vector<std::string> split(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string anchored(const std::string& origin, int line, const std::string& msg) {
  return origin + ":" + std::to_string(line) + ": " + msg;
}

}  // namespace

Table parse_table(const std::string& text, const std::string& origin) {
  Table t;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto cols = split(line, ',');
    if (cols.size() != 2) throw ConfigError(lineno, anchored(origin, lineno, "expected 2 columns"));
    const auto a = parse_double(cols[0]);
    const auto b = parse_double(cols[1]);
    if (!a || !b) {
      if (t.header.empty() && t.x.empty()) {
        t.header = cols;
        t.header_line = lineno;
        continue;
      }
      throw ConfigError(lineno, anchored(origin, lineno, "non-numeric value"));
    }
    t.x.push_back(*a);
    t.y.push_back(*b);
    t.lines.push_back(lineno);
  }
  if (t.x.empty()) throw ConfigError(0, origin + ": no data rows");
  return t;
}

Table read_table(const fs::path& path) { return parse_table(read_text(path), path.string()); }

void write_trace_csv(const fs::path& path, const IntensityTrace& trace) {
  std::string s = "time_s,intensity\n";
  s.reserve(trace.samples.size() * 32);
  for (std::size_t i = 0; i < trace.samples.size(); ++i)
    s += format_number(trace.grid.time(i)) + "," + format_number(trace.samples[i]) + "\n";
  write_text(path, s);
}

void write_spectrum_csv(const fs::path& path, const std::vector<double>& detuning_hz,
                        const std::vector<double>& value) {
  std::string s = "detuning_hz,value\n";
  s.reserve(value.size() * 32);
  for (std::size_t i = 0; i < value.size(); ++i)
    s += format_number(detuning_hz[i]) + "," + format_number(value[i]) + "\n";
  write_text(path, s);
}

void write_spectrum_csv(const fs::path& path, const RealSpectrum& spectrum) {
  write_spectrum_csv(path, spectrum.grid.detunings(), spectrum.values);
}

static void check_header(const Table& table, const std::string& origin, const char* a, const char* b) {
  if (table.header.empty() || (table.header[0] == a && table.header[1] == b)) return;
  throw ConfigError(table.header_line, anchored(origin, table.header_line,
                                                std::string("expected header ") + a + "," + b));
}

IntensityTrace trace_from_table(const Table& table, const std::string& origin) {
  check_header(table, origin, "time_s", "intensity");
  const auto& t = table.x;
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1]))
      throw ConfigError(table.lines[i], anchored(origin, table.lines[i], "time column not strictly increasing"));
  if (t.size() < 2) throw ConfigError(0, origin + ": need at least 2 samples");

  const std::size_t rows = t.size();
  const std::size_t n = std::bit_ceil(std::max<std::size_t>(rows, 64));
  const double window = t.back() - t.front();
  const double dt_rows = window / static_cast<double>(rows - 1);
  bool uniform = rows == n;
  for (std::size_t i = 1; uniform && i < rows; ++i)
    uniform = std::abs((t[i] - t[i - 1]) - dt_rows) <= 1e-4 * dt_rows;

  try {
    if (uniform) return IntensityTrace::clamped(SampledGrid(n, dt_rows, t.front()), table.y);
    const double dt = window / static_cast<double>(n - 1);
    std::vector<double> v(n);
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double ti = std::min(t.front() + static_cast<double>(i) * dt, t.back());
      while (j + 2 < rows && t[j + 1] < ti) ++j;
      const double w = (ti - t[j]) / (t[j + 1] - t[j]);
      v[i] = (1.0 - w) * table.y[j] + w * table.y[j + 1];
    }
    return IntensityTrace::clamped(SampledGrid(n, dt, t.front()), std::move(v));
  } catch (const Error& e) {
    throw ConfigError(0, origin + ": " + e.what());
  }
}

IntensityTrace read_trace_csv(const fs::path& path) {
  return trace_from_table(read_table(path), path.string());
}

MeasuredSpectrum spectrum_from_table(const Table& table, const std::string& origin) {
  check_header(table, origin, "detuning_hz", "value");
  for (std::size_t i = 0; i < table.x.size(); ++i) {
    if (i > 0 && !(table.x[i] > table.x[i - 1]))
      throw ConfigError(table.lines[i], anchored(origin, table.lines[i], "detunings not strictly increasing"));
    if (!(table.y[i] >= 0.0 && table.y[i] <= 1.0))
      throw ConfigError(table.lines[i], anchored(origin, table.lines[i], "transmission outside [0,1]"));
  }
  try {
    return MeasuredSpectrum(table.x, table.y);
  } catch (const Error& e) {
    throw ConfigError(0, origin + ": " + e.what());
  }
}

MeasuredSpectrum read_transmission_csv(const fs::path& path) {
  return spectrum_from_table(read_table(path), path.string());
}

IntensityTrace resample(const IntensityTrace& trace, const SampledGrid& grid) {
  std::vector<double> v(grid.size(), 0.0);
  const auto& g = trace.grid;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double u = (grid.time(i) - g.t_start()) / g.dt();
    if (u < 0.0 || u > static_cast<double>(g.size() - 1)) continue;
    const auto j = std::min(static_cast<std::size_t>(u), g.size() - 2);
    const double w = u - static_cast<double>(j);
    v[i] = (1.0 - w) * trace.samples[j] + w * trace.samples[j + 1];
  }
  return IntensityTrace(grid, std::move(v));
}

nlohmann::ordered_json to_json(const AnalysisReport& r) {
  nlohmann::ordered_json j;
  j["delay_centroid"] = rounded(r.delay_centroid);
  j["delay_peak"] = rounded(r.delay_peak);
  j["delay_xcorr"] = rounded(r.delay_xcorr);
  j["fwhm_time"] = rounded(r.fwhm_time);
  j["fwhm_spectrum"] = rounded(r.fwhm_spectrum);
  j["energy_loss"] = rounded(r.energy_loss);
  j["peak_transmission"] = rounded(r.peak_transmission);
  j["fidelity"] = rounded(r.fidelity);
  j["multimodal"] = r.multimodal;
  return j;
}

AnalysisReport report_from_json(const nlohmann::ordered_json& j) {
  AnalysisReport r;
  r.delay_centroid = j.at("delay_centroid").get<double>();
  r.delay_peak = j.at("delay_peak").get<double>();
  r.delay_xcorr = j.at("delay_xcorr").get<double>();
  r.fwhm_time = j.at("fwhm_time").get<double>();
  r.fwhm_spectrum = j.at("fwhm_spectrum").get<double>();
  r.energy_loss = j.at("energy_loss").get<double>();
  r.peak_transmission = j.at("peak_transmission").get<double>();
  r.fidelity = j.at("fidelity").get<double>();
  r.multimodal = j.value("multimodal", false);
  return r;
}

// ---------------------------------------------------------------------------
// Config

std::vector<double> ExperimentConfig::band_centers() const {
  if (centers) return *centers;
  if (pulse_kind == PulseKind::Amg) return {-mod_freq, 0.0, mod_freq};
  return {0.0};
}

double ExperimentConfig::band_half_width() const { return half_width ? *half_width : 0.5 * mod_freq; }

ExperimentConfig parse_config(const std::string& text, const fs::path& base_dir) {
  ExperimentConfig c;
  std::map<std::string, int> seen;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;

  const auto resolve = [&](const std::string& p) {
    fs::path path(p);
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (const auto hash = line.find('#'); hash != std::string::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw ConfigError(lineno, "empty key or value");
    if (auto [it, fresh] = seen.emplace(key, lineno); !fresh)
      throw ConfigError(lineno, "duplicate key '" + key + "' (first on line " + std::to_string(it->second) + ")");

    const auto number = [&]() {
      const auto v = parse_double(value);
      if (!v) throw ConfigError(lineno, key + ": not a number: '" + value + "'");
      return *v;
    };
    const auto positive = [&]() {
      const double v = number();
      if (!(v > 0.0)) throw ConfigError(lineno, key + ": must be > 0");
      return v;
    };
    const auto nonnegative = [&]() {
      const double v = number();
      if (!(v >= 0.0)) throw ConfigError(lineno, key + ": must be >= 0");
      return v;
    };
    const auto bad_choice = [&](const char* options) {
      return ConfigError(lineno, key + ": expected one of " + options + ", got '" + value + "'");
    };

    if (key == "grid.n_samples") {
      const double v = number();
      const auto n = static_cast<std::size_t>(v);
      if (v != std::floor(v) || v < 64 || !std::has_single_bit(n))
        throw ConfigError(lineno, "grid.n_samples: must be a power of two >= 64");
      c.n_samples = n;
    } else if (key == "grid.dt_s") {
      if (value == "auto") c.dt.reset();
      else c.dt = positive();
    } else if (key == "pulse.kind") {
      if (value == "gaussian") c.pulse_kind = PulseKind::Gaussian;
      else if (value == "amg") c.pulse_kind = PulseKind::Amg;
      else if (value == "file") c.pulse_kind = PulseKind::File;
      else throw bad_choice("gaussian|amg|file");
    } else if (key == "pulse.t_half_s") {
      c.t_half = positive();
    } else if (key == "pulse.mod_freq_hz") {
      c.mod_freq = positive();
    } else if (key == "pulse.center_s") {
      c.t_center = number();
    } else if (key == "pulse.path") {
      c.pulse_path = resolve(value);
    } else if (key == "medium.kind") {
      if (value == "lorentzian") c.medium_kind = MediumKind::Lorentzian;
      else if (value == "measured") c.medium_kind = MediumKind::Measured;
      else throw bad_choice("lorentzian|measured");
    } else if (key == "medium.gamma_hz") {
      c.model.gamma_hz = positive();
    } else if (key == "medium.depth") {
      c.model.depth = nonnegative();
    } else if (key == "medium.floor") {
      c.model.floor = nonnegative();
    } else if (key == "medium.path") {
      c.medium_path = resolve(value);
    } else if (key == "medium.phase_policy") {
      if (value == "none") c.phase_policy = PhasePolicy::None;
      else if (value == "minimum_phase") c.phase_policy = PhasePolicy::MinimumPhase;
      else throw bad_choice("none|minimum_phase");
    } else if (key == "medium.wing_policy") {
      if (value == "hold") c.wing_policy = WingPolicy::HoldEdge;
      else if (value == "strict") c.wing_policy = WingPolicy::Strict;
      else throw bad_choice("hold|strict");
    } else if (key == "compensation.reg_eps") {
      c.reg_eps = nonnegative();
    } else if (key == "decomposition.centers_hz") {
      std::vector<double> centers;
      for (const auto& item : split(value, ',')) {
        const auto v = parse_double(item);
        if (!v) throw ConfigError(lineno, key + ": not a number: '" + item + "'");
        centers.push_back(*v);
      }
      c.centers = centers;
    } else if (key == "decomposition.half_width_hz") {
      c.half_width = positive();
    } else if (key == "output.dir") {
      c.output_dir = resolve(value);
    } else {
      throw ConfigError(lineno, "unknown key '" + key + "'");
    }
  }

  if (c.pulse_kind == PulseKind::File && c.pulse_path.empty())
    throw ConfigError(0, "pulse.kind = file requires pulse.path");
  if (c.medium_kind == MediumKind::Measured && c.medium_path.empty())
    throw ConfigError(0, "medium.kind = measured requires medium.path");
  return c;
}

ExperimentConfig read_config(const fs::path& path) {
  const std::string text = read_text(path);
  try {
    return parse_config(text, path.parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError(e.line(), path.string() + ":" + std::to_string(e.line()) + ": " + e.what());
  }
}

}  // namespace slowlight::io
