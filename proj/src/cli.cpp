#include "slowlight/cli.hpp"

#include "slowlight/compensation.hpp"
#include "slowlight/error.hpp"
#include "slowlight/fit.hpp"
#include "slowlight/kernels.hpp"
#include "slowlight/propagation.hpp"
#include "slowlight/pulse.hpp"
#include "slowlight/svg.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace slowlight::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::Format:
    case ErrorKind::InvalidData:
      return 2;
    default:
      return 3;
  }
}

namespace {

IntensityTrace scaled(const IntensityTrace& t, double factor) {
  std::vector<double> v(t.samples);
  for (auto& x : v) x *= factor;
  return IntensityTrace(t.grid, std::move(v));
}

double peak_of(const IntensityTrace& t) { return *std::max_element(t.samples.begin(), t.samples.end()); }

SampledGrid grid_for(const io::ExperimentConfig& c) {
  if (c.dt) return SampledGrid::centered(c.n_samples, *c.dt);
  const double mod = c.pulse_kind == io::PulseKind::Amg ? c.mod_freq : 0.0;
  return SampledGrid::centered(c.n_samples, default_grid(c.t_half, mod).dt());
}

IntensityTrace input_for(const io::ExperimentConfig& c) {
  switch (c.pulse_kind) {
    case io::PulseKind::Gaussian:
      return gen_gaussian({c.t_half, c.t_center}, grid_for(c));
    case io::PulseKind::Amg:
      return gen_amg({{c.t_half, c.t_center}, c.mod_freq}, grid_for(c));
    case io::PulseKind::File: {
      auto trace = io::read_trace_csv(c.pulse_path);
      if (c.dt) return io::resample(trace, SampledGrid::centered(c.n_samples, *c.dt));
      return trace;
    }
  }
  fail(ErrorKind::ContractViolation, "unknown pulse kind");
}

TransferFunction medium_for(const io::ExperimentConfig& c) {
  if (c.medium_kind == io::MediumKind::Lorentzian) return TransferFunction::lorentzian(c.model);
  return TransferFunction::measured(io::read_transmission_csv(c.medium_path), c.phase_policy, c.wing_policy);
}

ordered_json peaks_json(const std::vector<SpectralPeak>& peaks) {
  ordered_json arr = ordered_json::array();
  for (const auto& p : peaks)
    arr.push_back({{"detuning_hz", io::rounded(p.detuning_hz)}, {"relative", io::rounded(p.relative)}});
  return arr;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

fs::path outdir_or(const GlobalOptions& opts, const fs::path& fallback) {
  return opts.outdir ? *opts.outdir : fallback;
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "slowlight: error[config]: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "slowlight: error[" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const fs::filesystem_error& e) {
    err << "slowlight: error[io]: " << e.what() << "\n";
    return 2;
  }
}

svg::Series series(std::string label, const std::vector<double>& x, std::vector<double> y,
                   std::string color, bool dashed = false) {
  return {std::move(label), x, std::move(y), std::move(color), dashed};
}

void write_plots(const Simulation& s, const io::ExperimentConfig& c, const fs::path& dir) {
  const auto t = s.grid.times();
  const double in_peak = peak_of(s.input);
  const auto norm = [&](const IntensityTrace& tr) {
    std::vector<double> v(tr.samples);
    for (auto& x : v) x /= in_peak;
    return v;
  };
  const double window = 6.0 * c.t_half * 1e6;
  const double tc = c.t_center * 1e6;

  svg::Chart traces{"Input, output and reshaped pulses", "time (us)", "intensity / input peak", 1e6,
                    tc - window, tc + window, {}};
  traces.series.push_back(series("input", t, norm(s.input), "#000000"));
  traces.series.push_back(series("output", t, norm(s.output), "#d62728"));
  traces.series.push_back(series("rescaled", t, norm(s.rescaled), "#ff7f0e", true));
  traces.series.push_back(series("reshaped", t, norm(s.reshaped), "#1f77b4", true));
  io::write_text(dir / "traces.svg", svg::render(traces));

  const auto f = s.grid.detunings();
  const auto in_spec = intensity_spectrum(s.input_spectrum).values;
  const double spec_peak = *std::max_element(in_spec.begin(), in_spec.end());
  const auto snorm = [&](std::vector<double> v) {
    for (auto& x : v) x /= spec_peak;
    return v;
  };
  std::vector<double> trans(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) trans[k] = s.tf.transmission(f[k]);
  double outer = 0.0;
  for (double center : c.band_centers()) outer = std::max(outer, std::abs(center));
  const double reach = 1e-3 * std::max(1e6, 1.5 * (outer + c.band_half_width()));
  svg::Chart spectra{"Intensity spectra and transmission", "detuning (kHz)", "normalized", 1e-3,
                     -reach, reach, {}};
  spectra.series.push_back(series("input", f, snorm(in_spec), "#000000"));
  spectra.series.push_back(series("output", f, snorm(intensity_spectrum(s.output_spectrum).values), "#d62728"));
  spectra.series.push_back(
    series("compensated", f, snorm(intensity_spectrum(s.compensated_spectrum).values), "#1f77b4", true));
  spectra.series.push_back(series("transmission", f, trans, "#2ca02c"));
  io::write_text(dir / "spectra.svg", svg::render(spectra));

  svg::Chart comps{"Band components (output)", "time (us)", "intensity / input peak", 1e6,
                   tc - window, tc + window, {}};
  const char* colors[] = {"#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22"};
  for (std::size_t k = 0; k < s.components.size(); ++k) {
    const auto& b = s.components[k];
    const std::string name = io::format_number(b.center_hz * 1e-3) + " kHz";
    comps.series.push_back(series(name + " in", t, norm(b.input), colors[k % 5], true));
    comps.series.push_back(series(name + " out", t, norm(b.output), colors[k % 5]));
  }
  io::write_text(dir / "components.svg", svg::render(comps));
}

}  // namespace

std::vector<SpectralPeak> spectral_peaks(const RealSpectrum& spectrum, double threshold) {
  const auto& v = spectrum.values;
  const double top = *std::max_element(v.begin(), v.end());
  std::vector<SpectralPeak> peaks;
  if (!(top > 0.0)) return peaks;
  for (std::size_t k = 1; k + 1 < v.size(); ++k) {
    if (!(v[k] > v[k - 1] && v[k] >= v[k + 1]) || v[k] < threshold * top) continue;
    const double den = v[k - 1] - 2.0 * v[k] + v[k + 1];
    const double off = den < 0.0 ? 0.5 * (v[k - 1] - v[k + 1]) / den : 0.0;
    peaks.push_back({spectrum.grid.detuning(k) + off * spectrum.grid.df(), v[k] / top});
  }
  return peaks;
}

Simulation simulate(const io::ExperimentConfig& c) {
  const auto input = input_for(c);
  const auto& grid = input.grid;
  const auto tf = medium_for(c);
  const auto field = amplitude_from_intensity(input);
  const auto input_spec = forward_transform(field);
  auto out_field = propagate(field, tf);
  const auto output = intensity_of(out_field);
  const auto out_spec = forward_transform(out_field);
  const auto comp = compensate_spectrum(out_spec, tf, c.reg_eps);
  const auto reshaped = reshape(comp);

  const auto centers = c.band_centers();
  const auto in_parts = decompose_bands(input_spec, centers, c.band_half_width());
  const auto out_parts = decompose_bands(out_spec, centers, c.band_half_width());
  double e_in = 0.0, e_out = 0.0;
  for (std::size_t k = 0; k < centers.size(); ++k) {
    e_in += energy(in_parts[k]);
    e_out += energy(out_parts[k]);
  }
  std::vector<BandComponent> components;
  for (std::size_t k = 0; k < centers.size(); ++k) {
    auto ci = intensity_of(in_parts[k]);
    auto co = intensity_of(out_parts[k]);
    const double di = delay(ci, co, DelayMethod::Centroid);
    const double dp = delay(ci, co, DelayMethod::Peak);
    components.push_back({centers[k], std::move(ci), std::move(co), energy(in_parts[k]) / e_in,
                          e_out > 0.0 ? energy(out_parts[k]) / e_out : 0.0, di, dp});
  }
  const double gain = peak_of(input) / peak_of(output);
  return Simulation{grid,
                    tf,
                    input,
                    input_spec,
                    out_field,
                    output,
                    scaled(output, gain),
                    out_spec,
                    comp,
                    reshaped,
                    std::move(components),
                    spectral_peaks(intensity_spectrum(input_spec)),
                    analyze(input, output),
                    analyze(input, reshaped)};
}

int run_simulate(const fs::path& config, const GlobalOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto c = io::read_config(config);
    const auto s = simulate(c);
    const fs::path dir = outdir_or(opts, c.output_dir);
    fs::create_directories(dir);

    io::write_trace_csv(dir / "input_trace.csv", s.input);
    io::write_trace_csv(dir / "output_trace.csv", s.output);
    io::write_trace_csv(dir / "rescaled_trace.csv", s.rescaled);
    io::write_trace_csv(dir / "reshaped_trace.csv", s.reshaped);
    io::write_spectrum_csv(dir / "input_spectrum.csv", intensity_spectrum(s.input_spectrum));
    io::write_spectrum_csv(dir / "output_spectrum.csv", intensity_spectrum(s.output_spectrum));
    io::write_spectrum_csv(dir / "compensated_spectrum.csv", intensity_spectrum(s.compensated_spectrum));
    {
      const auto f = s.grid.detunings();
      std::vector<double> trans(f.size());
      for (std::size_t k = 0; k < f.size(); ++k) trans[k] = s.tf.transmission(f[k]);
      io::write_spectrum_csv(dir / "transmission.csv", f, trans);
    }

    ordered_json comps = ordered_json::array();
    for (std::size_t k = 0; k < s.components.size(); ++k) {
      const auto& b = s.components[k];
      io::write_trace_csv(dir / ("component_" + std::to_string(k) + "_input.csv"), b.input);
      io::write_trace_csv(dir / ("component_" + std::to_string(k) + "_output.csv"), b.output);
      comps.push_back({{"center_hz", io::rounded(b.center_hz)},
                       {"input_energy_fraction", io::rounded(b.input_energy_fraction)},
                       {"output_energy_fraction", io::rounded(b.output_energy_fraction)},
                       {"delay_centroid", io::rounded(b.delay_centroid)},
                       {"delay_peak", io::rounded(b.delay_peak)}});
    }

    ordered_json doc;
    doc["output"] = io::to_json(s.output_report);
    doc["reshaped"] = io::to_json(s.reshaped_report);
    doc["input_spectral_peaks"] = peaks_json(s.input_peaks);
    doc["components"] = comps;
    io::write_text(dir / "report.json", dump(doc));
    if (opts.plots) write_plots(s, c, dir);

    out << "delay_centroid_s = " << io::format_number(s.output_report.delay_centroid) << "\n"
        << "energy_loss = " << io::format_number(s.output_report.energy_loss) << "\n"
        << "fidelity_output = " << io::format_number(s.output_report.fidelity) << "\n"
        << "fidelity_reshaped = " << io::format_number(s.reshaped_report.fidelity) << "\n"
        << "wrote " << dir.string() << "\n";
    return 0;
  });
}

int run_compensate(const fs::path& trace, const fs::path& transmission, double reg_eps,
                   const GlobalOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto output = io::read_trace_csv(trace);
    const auto table = io::read_transmission_csv(transmission);
    const auto tf = TransferFunction::measured(table, PhasePolicy::None);
    const auto spec = forward_transform(amplitude_from_intensity(output));
    const auto comp = compensate_spectrum(spec, tf, reg_eps);
    const auto reshaped = reshape(comp);

    const fs::path dir = outdir_or(opts, "out");
    io::write_spectrum_csv(dir / "compensated_spectrum.csv", intensity_spectrum(comp));
    io::write_trace_csv(dir / "reshaped_trace.csv", reshaped);
    ordered_json doc = io::to_json(analyze(output, reshaped));
    io::write_text(dir / "report.json", dump(doc));
    if (opts.plots) {
      svg::Chart chart{"Measured output and reshaped pulse", "time (us)", "intensity", 1e6, {}, {}, {}};
      const auto t = output.grid.times();
      chart.series.push_back(series("output", t, output.samples, "#d62728"));
      chart.series.push_back(series("reshaped", t, reshaped.samples, "#1f77b4", true));
      io::write_text(dir / "reshaped.svg", svg::render(chart));
    }
    out << "wrote " << dir.string() << "\n";
    return 0;
  });
}

int run_fit(const fs::path& transmission, const GlobalOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto table = io::read_transmission_csv(transmission);
    const auto fit = fit_lorentzian(table);
    std::string model = "# fitted to " + transmission.filename().string() + "\n";
    model += "# rms_residual = " + io::format_number(fit.rms_residual) + "\n";
    model += "medium.kind = lorentzian\n";
    model += "medium.gamma_hz = " + io::format_number(fit.model.gamma_hz) + "\n";
    model += "medium.depth = " + io::format_number(fit.model.depth) + "\n";
    model += "medium.floor = " + io::format_number(fit.model.floor) + "\n";
    const fs::path dir = outdir_or(opts, "out");
    io::write_text(dir / "fit_model.cfg", model);
    if (opts.plots) {
      svg::Chart chart{"Transmission fit", "detuning (kHz)", "transmission", 1e-3, {}, {}, {}};
      std::vector<double> m(table.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = fit.model.transmission(table.detunings()[i]);
      chart.series.push_back(series("measured", table.detunings(), table.transmissions(), "#000000"));
      chart.series.push_back(series("fit", table.detunings(), m, "#d62728", true));
      io::write_text(dir / "fit.svg", svg::render(chart));
    }
    out << "gamma_hz = " << io::format_number(fit.model.gamma_hz) << "\n"
        << "depth = " << io::format_number(fit.model.depth) << "\n"
        << "floor = " << io::format_number(fit.model.floor) << "\n"
        << "rms_residual = " << io::format_number(fit.rms_residual) << "\n";
    return 0;
  });
}

int run_analyze(const fs::path& in, const fs::path& out_trace, const GlobalOptions& opts, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    const auto a = io::read_trace_csv(in);
    auto b = io::read_trace_csv(out_trace);
    const auto& ga = a.grid;
    const auto& gb = b.grid;
    const bool same = ga.size() == gb.size() && std::abs(ga.dt() - gb.dt()) <= 1e-9 * ga.dt() &&
                      std::abs(ga.t_start() - gb.t_start()) <= 1e-6 * ga.dt();
    if (same) {
      b = IntensityTrace(ga, b.samples);
    } else {
      err << "slowlight: warning: traces on different grids; resampled " << out_trace.string()
          << " onto the grid of " << in.string() << "\n";
      b = io::resample(b, ga);
    }
    const auto report = analyze(a, b);
    const fs::path dir = outdir_or(opts, "out");
    const auto doc = io::to_json(report);
    io::write_text(dir / "report.json", dump(doc));
    out << dump(doc);
    return 0;
  });
}

int run_kk(const fs::path& transmission, const GlobalOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto table = io::read_transmission_csv(transmission);
    const auto tf = TransferFunction::measured(table, PhasePolicy::MinimumPhase);
    std::vector<double> phase(table.size());
    for (std::size_t i = 0; i < phase.size(); ++i) phase[i] = tf.phase(table.detunings()[i]);
    const fs::path dir = outdir_or(opts, "out");
    io::write_spectrum_csv(dir / "kk_phase.csv", table.detunings(), phase);
    if (opts.plots) {
      svg::Chart chart{"Minimum phase", "detuning (kHz)", "phase (rad)", 1e-3, {}, {}, {}};
      chart.series.push_back(series("phase", table.detunings(), phase, "#1f77b4"));
      io::write_text(dir / "kk_phase.svg", svg::render(chart));
    }
    out << "wrote " << (dir / "kk_phase.csv").string() << "\n";
    return 0;
  });
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Slow-light pulse propagation, compensation and analysis"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions opts;
  std::string outdir;
  app.add_flag("--plots", opts.plots, "Write SVG figures next to the data files");
  app.add_option("--outdir", outdir, "Output directory");

  std::string config;
  auto* sim = app.add_subcommand("simulate", "Run the full chain for a config file");
  sim->add_option("config", config)->required();

  std::string trace, transmission;
  double reg_eps = 1e-3;
  auto* comp = app.add_subcommand("compensate", "Compensate a measured output trace");
  comp->add_option("--out", trace, "Output intensity trace CSV")->required();
  comp->add_option("--transmission", transmission, "Transmission spectrum CSV")->required();
  comp->add_option("--reg-eps", reg_eps, "Wiener regularization (relative to max amplitude)");

  std::string fit_csv;
  auto* fit = app.add_subcommand("fit", "Fit the Lorentzian window to a transmission CSV");
  fit->add_option("csv", fit_csv)->required();

  std::string in_file, out_file;
  auto* an = app.add_subcommand("analyze", "Compare two intensity traces");
  an->add_option("in", in_file)->required();
  an->add_option("out", out_file)->required();

  std::string kk_csv;
  auto* kk = app.add_subcommand("kk", "Minimum phase of a transmission CSV");
  kk->add_option("csv", kk_csv)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "slowlight: error[usage]: " << e.what() << "\n";
    return 2;
  }
  if (!outdir.empty()) opts.outdir = outdir;

  if (*sim) return run_simulate(config, opts, out, err);
  if (*comp) {
    if (!(reg_eps >= 0.0)) {
      err << "slowlight: error[usage]: --reg-eps must be >= 0\n";
      return 2;
    }
    return run_compensate(trace, transmission, reg_eps, opts, out, err);
  }
  if (*fit) return run_fit(fit_csv, opts, out, err);
  if (*an) return run_analyze(in_file, out_file, opts, out, err);
  if (*kk) return run_kk(kk_csv, opts, out, err);
  return 2;
}

}  // namespace slowlight::cli
