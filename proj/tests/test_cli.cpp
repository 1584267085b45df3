#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"

#include "slowlight/cli.hpp"
#include "slowlight/compensation.hpp"
#include "slowlight/io.hpp"

#include <filesystem>
#include <sstream>

using namespace slowlight;
namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

const fs::path kConfigs = fs::path(SLOWLIGHT_SOURCE_DIR) / "configs";

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "slowlight_test_cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "slowlight");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

ordered_json load_json(const fs::path& p) { return ordered_json::parse(io::read_text(p)); }

// One simulation per bundled config, shared across test cases.
const fs::path& simulated(const std::string& name) {
  static std::map<std::string, fs::path> done;
  auto it = done.find(name);
  if (it == done.end()) {
    const auto dir = scratch("sim_" + name);
    const auto r = run({"simulate", (kConfigs / (name + ".cfg")).string(), "--outdir", dir.string(), "--plots"});
    REQUIRE(r.code == 0);
    it = done.emplace(name, dir).first;
  }
  return it->second;
}

void write_transmission(const fs::path& path, const oracle::Window& w, std::size_t points, double reach) {
  std::vector<double> d(points), t(points);
  for (std::size_t i = 0; i < points; ++i) {
    d[i] = -reach + 2.0 * reach * static_cast<double>(i) / static_cast<double>(points - 1);
    t[i] = w.transmission(d[i]);
  }
  io::write_spectrum_csv(path, d, t);
}

bool single_error_line(const std::string& err) {
  return err.rfind("slowlight: error[", 0) == 0 && err.find('\n') == err.size() - 1;
}

}  // namespace

TEST_CASE("simulate writes the full set of artifacts") {
  const auto& dir = simulated("gaussian");
  for (const char* f : {"input_trace.csv", "output_trace.csv", "rescaled_trace.csv", "reshaped_trace.csv",
                        "input_spectrum.csv", "output_spectrum.csv", "compensated_spectrum.csv", "transmission.csv",
                        "component_0_input.csv", "component_0_output.csv", "report.json", "traces.svg",
                        "spectra.svg", "components.svg"})
    CHECK_MESSAGE(fs::exists(dir / f), f);
  const auto head = io::read_text(dir / "input_trace.csv").substr(0, 17);
  CHECK(head == "time_s,intensity\n");
  CHECK(io::read_text(dir / "transmission.csv").find("detuning_hz,value\n") != std::string::npos);
  CHECK(io::read_text(dir / "traces.svg").rfind("<svg", 0) == 0);
}

TEST_CASE("gaussian.cfg report") {
  const auto j = load_json(simulated("gaussian") / "report.json");
  const double expected = oracle::mean_group_delay(oracle::reference_window(), 2.97e-6);
  CHECK(j["output"]["delay_centroid"].get<double>() == doctest::Approx(expected).epsilon(1e-4));
  CHECK(j["reshaped"]["fidelity"].get<double>() >= 0.999);
  CHECK_FALSE(j["output"]["multimodal"].get<bool>());
}

TEST_CASE("amg.cfg report") {
  const auto j = load_json(simulated("amg") / "report.json");
  bool left = false, right = false;
  for (const auto& p : j["input_spectral_peaks"]) {
    const double d = p["detuning_hz"].get<double>();
    if (std::abs(d + 700e3) < 1.4e3) left = true;
    if (std::abs(d - 700e3) < 1.4e3) right = true;
  }
  CHECK(left);
  CHECK(right);
  const auto g = load_json(simulated("gaussian") / "report.json");
  CHECK(j["output"]["energy_loss"].get<double>() > g["output"]["energy_loss"].get<double>());
  REQUIRE(j["components"].size() == 3);
  CHECK(j["components"][0]["delay_centroid"].get<double>() < 0.0);
  CHECK(j["components"][1]["delay_centroid"].get<double>() > 0.0);
  CHECK(j["components"][2]["delay_centroid"].get<double>() < 0.0);
}

TEST_CASE("simulate is deterministic") {
  const auto a = scratch("det_a"), b = scratch("det_b");
  const auto cfg = (kConfigs / "amg.cfg").string();
  REQUIRE(run({"simulate", cfg, "--outdir", a.string(), "--plots"}).code == 0);
  REQUIRE(run({"simulate", cfg, "--outdir", b.string(), "--plots"}).code == 0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    ++files;
    CHECK_MESSAGE(io::read_text(e.path()) == io::read_text(b / e.path().filename()), e.path().filename());
  }
  CHECK(files > 10);
}

TEST_CASE("schema violations exit 2 with a line-anchored message") {
  const auto dir = scratch("bad_cfg");
  io::write_text(dir / "bad.cfg", "pulse.kind = gaussian\ngrid.n_samples = 100\n");
  const auto r = run({"simulate", (dir / "bad.cfg").string(), "--outdir", dir.string()});
  CHECK(r.code == 2);
  CHECK(single_error_line(r.err));
  CHECK(r.err.find("bad.cfg:2") != std::string::npos);
  CHECK(run({"simulate", (dir / "nope.cfg").string()}).code == 2);
}

TEST_CASE("numeric failures exit 3") {
  const auto dir = scratch("numeric");
  // A 1.5 us grid cannot hold a 2.97 us pulse: truncation.
  io::write_text(dir / "short.cfg", "grid.n_samples = 64\ngrid.dt_s = 2.5e-8\n");
  const auto r = run({"simulate", (dir / "short.cfg").string(), "--outdir", dir.string()});
  CHECK(r.code == 3);
  CHECK(single_error_line(r.err));
}

TEST_CASE("compensate via files matches the library path") {
  const auto& sim = simulated("gaussian");
  const auto dir = scratch("comp");
  const auto r = run({"compensate", "--out", (sim / "output_trace.csv").string(), "--transmission",
                      (sim / "transmission.csv").string(), "--outdir", dir.string(), "--plots"});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "compensated_spectrum.csv"));
  CHECK(fs::exists(dir / "reshaped.svg"));
  CHECK(fs::exists(dir / "report.json"));

  const auto output = io::read_trace_csv(sim / "output_trace.csv");
  const auto tf = tf_from_measured(io::read_transmission_csv(sim / "transmission.csv"), PhasePolicy::None);
  const auto lib = reshape(compensate_spectrum(forward_transform(amplitude_from_intensity(output)), tf,
                                               kDefaultRegEps));
  const auto file = io::read_trace_csv(dir / "reshaped_trace.csv");
  REQUIRE(file.samples.size() == lib.samples.size());
  for (std::size_t i = 0; i < lib.samples.size(); ++i) CHECK(file.samples[i] == io::rounded(lib.samples[i]));

  // The reshaped pulse from the files tracks the in-memory simulation.
  CHECK(fidelity(file, io::read_trace_csv(sim / "reshaped_trace.csv")) >= 0.9999);
}

TEST_CASE("compensate input errors") {
  const auto& sim = simulated("gaussian");
  const auto dir = scratch("comp_err");
  io::write_text(dir / "hot.csv", "detuning_hz,value\n-1e6,0.5\n0,1.2\n1e6,0.5\n");
  auto r = run({"compensate", "--out", (sim / "output_trace.csv").string(), "--transmission",
                (dir / "hot.csv").string(), "--outdir", dir.string()});
  CHECK(r.code == 2);
  CHECK(single_error_line(r.err));

  io::write_text(dir / "zero.csv", "detuning_hz,value\n-1e6,1\n0,0\n1e6,1\n");
  r = run({"compensate", "--out", (sim / "output_trace.csv").string(), "--transmission",
           (dir / "zero.csv").string(), "--reg-eps", "0", "--outdir", dir.string()});
  CHECK(r.code == 3);
  CHECK(single_error_line(r.err));

  io::write_text(dir / "back.csv", "time_s,intensity\n0,1\n2e-6,1\n1e-6,1\n");
  r = run({"compensate", "--out", (dir / "back.csv").string(), "--transmission",
           (sim / "transmission.csv").string(), "--outdir", dir.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find(":4") != std::string::npos);
}

TEST_CASE("fit recovers the window from a file") {
  const auto dir = scratch("fit");
  write_transmission(dir / "window.csv", oracle::reference_window(), 201, 2e6);
  const auto r = run({"fit", (dir / "window.csv").string(), "--outdir", dir.string()});
  REQUIRE(r.code == 0);
  const auto cfg = io::read_config(dir / "fit_model.cfg");
  CHECK(cfg.medium_kind == io::MediumKind::Lorentzian);
  CHECK(cfg.model.gamma_hz == doctest::Approx(175e3).epsilon(1e-3));
  CHECK(cfg.model.depth == doctest::Approx(2.0 * oracle::kLn2).epsilon(1e-3));
  CHECK(io::read_text(dir / "fit_model.cfg").find("# rms_residual") != std::string::npos);

  io::write_text(dir / "flat.csv", "detuning_hz,value\n1,0.5\n2,0.5\n3,0.5\n4,0.5\n5,0.5\n6,0.5\n7,0.5\n8,0.5\n");
  CHECK(run({"fit", (dir / "flat.csv").string(), "--outdir", dir.string()}).code == 3);
}

TEST_CASE("analyze") {
  const auto& sim = simulated("gaussian");
  const auto dir = scratch("analyze");
  const auto in = (sim / "input_trace.csv").string();
  auto r = run({"analyze", in, in, "--outdir", dir.string()});
  REQUIRE(r.code == 0);
  const auto j = load_json(dir / "report.json");
  CHECK(j["delay_centroid"].get<double>() == 0.0);
  CHECK(j["delay_peak"].get<double>() == 0.0);
  CHECK(j["delay_xcorr"].get<double>() == 0.0);
  CHECK(j["fidelity"].get<double>() == 1.0);
  CHECK(r.err.empty());

  // Same pulse on a coarser grid: resampled with a warning.
  const auto trace = io::read_trace_csv(sim / "input_trace.csv");
  std::vector<double> half(trace.samples.size() / 2);
  for (std::size_t i = 0; i < half.size(); ++i) half[i] = trace.samples[2 * i];
  io::write_trace_csv(dir / "coarse.csv",
                      IntensityTrace(SampledGrid(half.size(), 2.0 * trace.grid.dt(), trace.grid.t_start()), half));
  r = run({"analyze", in, (dir / "coarse.csv").string(), "--outdir", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  const auto k = load_json(dir / "report.json");
  CHECK(std::abs(k["delay_centroid"].get<double>()) < trace.grid.dt());
  CHECK(k["fidelity"].get<double>() > 0.9999);
}

TEST_CASE("kk writes the phase at the table detunings") {
  const auto dir = scratch("kk");
  write_transmission(dir / "window.csv", oracle::reference_window(), 401, 4e6);
  const auto r = run({"kk", (dir / "window.csv").string(), "--outdir", dir.string()});
  REQUIRE(r.code == 0);
  const auto t = io::read_table(dir / "kk_phase.csv");
  CHECK(t.x.size() == 401);
  const auto w = oracle::reference_window();
  const double peak = w.phase(175e3);
  for (std::size_t i = 0; i < t.x.size(); ++i)
    if (std::abs(t.x[i]) <= 350e3) CHECK(std::abs(t.y[i] - w.phase(t.x[i])) <= 0.03 * peak);
}

TEST_CASE("command line errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"teleport"}).code == 2);
  CHECK(run({"simulate"}).code == 2);
  CHECK(run({"compensate", "--out", "x.csv"}).code == 2);
  CHECK(run({"compensate", "--out", "a", "--transmission", "b", "--reg-eps", "soon"}).code == 2);
}

TEST_CASE("exit code mapping") {
  CHECK(cli::exit_code_for(ErrorKind::Config) == 2);
  CHECK(cli::exit_code_for(ErrorKind::Format) == 2);
  CHECK(cli::exit_code_for(ErrorKind::InvalidData) == 2);
  CHECK(cli::exit_code_for(ErrorKind::DivisionBlowup) == 3);
  CHECK(cli::exit_code_for(ErrorKind::Truncation) == 3);
}
