#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"

#include "slowlight/error.hpp"
#include "slowlight/medium.hpp"

using namespace slowlight;

namespace {

const oracle::Window kRef = oracle::reference_window();

MeasuredSpectrum sample_window(const oracle::Window& w, std::size_t points, double reach) {
  std::vector<double> d(points), t(points);
  for (std::size_t i = 0; i < points; ++i) {
    d[i] = -reach + 2.0 * reach * static_cast<double>(i) / static_cast<double>(points - 1);
    t[i] = w.transmission(d[i]);
  }
  return {d, t};
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::ContractViolation;
}

}  // namespace

TEST_CASE("reference model parameters") {
  const auto m = LorentzianEitModel::reference();
  CHECK(m.gamma_hz == 175e3);
  CHECK(m.depth == doctest::Approx(kRef.depth).epsilon(1e-15));
  CHECK(m.floor == doctest::Approx(kRef.floor).epsilon(1e-15));
}

TEST_CASE("reference model evaluation") {
  const auto tf = TransferFunction::lorentzian(LorentzianEitModel::reference());
  CHECK(std::norm(eval_transfer(tf, 0.0)) == doctest::Approx(0.615).epsilon(1e-12));
  CHECK(tf.phase(0.0) == 0.0);
  for (double d : {-175e3, 175e3}) CHECK(tf.transmission(d) == doctest::Approx(0.3075).epsilon(1e-12));
  CHECK(tf.transmission(700e3) == doctest::Approx(kRef.transmission(700e3)).epsilon(1e-13));
  CHECK(tf.transmission(700e3) == doctest::Approx(0.167).epsilon(2e-3));
  for (double d : {-1.3e6, -320e3, 0.0, 11e3, 175e3, 2e6})
    CHECK(std::arg(tf.eval(d)) == doctest::Approx(kRef.phase(d)).epsilon(1e-12));
}

TEST_CASE("window calibration: peak 0.615 and FWHM 350 kHz") {
  const auto tf = TransferFunction::lorentzian(LorentzianEitModel::reference());
  CHECK(std::abs(tf.transmission(0.0) - 0.615) <= 1e-6);
  const double w = oracle::bisect_fwhm([&](double d) { return tf.transmission(d); }, 0.0, 2e6);
  CHECK(w == doctest::Approx(350e3).epsilon(1e-3));
}

TEST_CASE("group delay of the reference model") {
  const auto tf = TransferFunction::lorentzian(LorentzianEitModel::reference());
  CHECK(group_delay(tf, 0.0) == doctest::Approx(kRef.group_delay(0.0)).epsilon(1e-6));
  CHECK(group_delay(tf, 0.0) == doctest::Approx(0.630e-6).epsilon(1e-3));
  for (double d : {-700e3, 700e3}) {
    CHECK(group_delay(tf, d) == doctest::Approx(kRef.group_delay(d)).epsilon(1e-6));
    CHECK(group_delay(tf, d) == doctest::Approx(-33e-9).epsilon(0.02));
  }
  for (double d : {-175e3, 175e3}) CHECK(std::abs(group_delay(tf, d)) < 1e-6 * kRef.group_delay(0.0));
}

TEST_CASE("group delay sign: slow inside the window, fast outside") {
  const auto tf = TransferFunction::lorentzian(LorentzianEitModel::reference());
  for (double d = -2e6; d <= 2e6; d += 9.7e3) {
    CAPTURE(d);
    if (std::abs(d) < 0.99 * 175e3) CHECK(group_delay(tf, d) > 0.0);
    if (std::abs(d) > 1.01 * 175e3) CHECK(group_delay(tf, d) < 0.0);
  }
}

TEST_CASE("group delay needs a phase") {
  const auto tf = tf_from_measured(sample_window(kRef, 51, 1e6), PhasePolicy::None);
  CHECK(kind_of([&] { group_delay(tf, 0.0); }) == ErrorKind::Unavailable);
}

TEST_CASE("parametric symmetry and passivity for random models") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> g(1e3, 1e7), depth(0.0, 20.0), fl(0.0, 5.0), det(-5e7, 5e7);
  for (int rep = 0; rep < 1000; ++rep) {
    const LorentzianEitModel m{g(rng), depth(rng), fl(rng)};
    const auto tf = TransferFunction::lorentzian(m);
    const double d = det(rng);
    CHECK(tf.amplitude(-d) == tf.amplitude(d));
    CHECK(tf.phase(-d) == -tf.phase(d));
    CHECK(std::abs(tf.eval(d)) <= 1.0);
  }
}

TEST_CASE("invalid parametric models are rejected") {
  CHECK_THROWS_AS(TransferFunction::lorentzian({0.0, 1.0, 0.0}), Error);
  CHECK_THROWS_AS(TransferFunction::lorentzian({1e5, -1.0, 0.0}), Error);
  CHECK_THROWS_AS(TransferFunction::lorentzian({1e5, 1.0, -0.1}), Error);
}

TEST_CASE("measured spectrum validation") {
  CHECK(kind_of([] { MeasuredSpectrum({0.0, 1.0, 1.0}, {0.1, 0.2, 0.3}); }) == ErrorKind::Format);
  CHECK(kind_of([] { MeasuredSpectrum({0.0, 2.0, 1.0}, {0.1, 0.2, 0.3}); }) == ErrorKind::Format);
  CHECK(kind_of([] { MeasuredSpectrum({-1e6, 1e6}, {0.5, 1.2}); }) == ErrorKind::Format);
  CHECK(kind_of([] { MeasuredSpectrum({-1e6, 1e6}, {-0.1, 0.5}); }) == ErrorKind::Format);
  CHECK(kind_of([] { MeasuredSpectrum({-1e6, 0.0, 1e6}, {0.5, 0.5}); }) == ErrorKind::Format);
}

TEST_CASE("two-point flat table interpolates flat") {
  const MeasuredSpectrum m({-1e6, 1e6}, {0.5, 0.5});
  const auto tf = tf_from_measured(m, PhasePolicy::None);
  for (double d = -1e6; d <= 1e6; d += 1e4) CHECK(tf.amplitude(d) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(tf.phase(0.3e6) == 0.0);
}

TEST_CASE("monotone cubic does not overshoot") {
  const MonotoneCubic c({0.0, 1.0, 2.0, 3.0, 4.0}, {0.0, 0.0, 1.0, 1.0, 1.0});
  for (double x = -1.0; x <= 5.0; x += 0.01) {
    CHECK(c(x) >= 0.0);
    CHECK(c(x) <= 1.0);
  }
  CHECK(c(2.0) == 1.0);
  CHECK(c(-3.0) == 0.0);
  CHECK(c(9.0) == 1.0);
}

TEST_CASE("interpolated table from 201 samples tracks the model magnitude") {
  const auto tf = tf_from_measured(sample_window(kRef, 201, 2e6), PhasePolicy::None);
  const auto exact = TransferFunction::lorentzian(LorentzianEitModel::reference());
  for (double d = -2e6; d <= 2e6; d += 997.0)
    CHECK(std::abs(tf.amplitude(d) - exact.amplitude(d)) <= 5e-3 * exact.amplitude(d));
}

TEST_CASE("wing policies") {
  const auto m = sample_window(kRef, 41, 1e6);
  const auto hold = tf_from_measured(m, PhasePolicy::None, WingPolicy::HoldEdge);
  CHECK(hold.transmission(5e6) == doctest::Approx(m.transmissions().back()).epsilon(1e-15));
  CHECK(hold.transmission(-5e6) == doctest::Approx(m.transmissions().front()).epsilon(1e-15));
  const auto strict = tf_from_measured(m, PhasePolicy::None, WingPolicy::Strict);
  CHECK(kind_of([&] { strict.eval(1.5e6); }) == ErrorKind::OutOfRange);
  CHECK_NOTHROW(strict.eval(1e6));
}

TEST_CASE("measured passivity") {
  const auto tf = tf_from_measured(sample_window(kRef, 63, 1.5e6), PhasePolicy::MinimumPhase);
  for (double d = -4e6; d <= 4e6; d += 3.1e3) CHECK(std::abs(tf.eval(d)) <= 1.0);
}

TEST_CASE("minimum phase of a flat transmission is zero") {
  const auto g = SampledGrid::centered(4096, 1.0 / (16.0 * 2e6));
  for (double c : {1.0, 0.62, 1e-6}) {
    const MeasuredSpectrum m({-2e6, 0.0, 2e6}, {c, c, c});
    const auto phi = kk_min_phase(m, g);
    for (double p : phi.values) CHECK(std::abs(p) < 1e-12);
  }
}

TEST_CASE("minimum phase of the model magnitude reproduces the model phase") {
  const auto m = sample_window(kRef, 801, 4e6);
  const auto g = SampledGrid::centered(16384, 1.0 / (16.0 * 4e6) * 4.0);
  REQUIRE(g.detuning(0) <= -4e6);
  const auto phi = kk_min_phase(m, g);
  const double peak = kRef.phase(175e3);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double d = g.detuning(k);
    if (std::abs(d) <= 2.0 * 175e3) CHECK(std::abs(phi.values[k] - kRef.phase(d)) <= 0.03 * peak);
  }
}

TEST_CASE("minimum phase of symmetric data is odd") {
  const auto m = sample_window(kRef, 201, 2e6);
  REQUIRE(m.symmetric());
  const auto g = SampledGrid::centered(8192, 1.0 / (16.0 * 2e6) * 2.0);
  const auto phi = kk_min_phase(m, g);
  const std::size_t z = g.zero_bin();
  CHECK(phi.values[z] == 0.0);
  for (std::size_t k = 1; k < z; ++k) CHECK(phi.values[z + k] == -phi.values[z - k]);
}

TEST_CASE("minimum phase errors") {
  const auto g = SampledGrid::centered(1024, 1e-7);
  CHECK(kind_of([&] { kk_min_phase(MeasuredSpectrum({-1e5, 0.0, 1e5}, {0.0, 0.0, 0.0}), g); }) ==
        ErrorKind::DegenerateInput);
  CHECK(kind_of([&] { kk_min_phase(sample_window(kRef, 11, 1e8), g); }) == ErrorKind::ContractViolation);
}

TEST_CASE("minimum-phase transfer function agrees with the model") {
  const auto tf = tf_from_measured(sample_window(kRef, 801, 4e6), PhasePolicy::MinimumPhase);
  REQUIRE(tf.has_phase());
  const double peak = kRef.phase(175e3);
  for (double d = -350e3; d <= 350e3; d += 7e3) CHECK(std::abs(tf.phase(d) - kRef.phase(d)) <= 0.03 * peak);
  CHECK(group_delay(tf, 0.0) == doctest::Approx(kRef.group_delay(0.0)).epsilon(0.05));
  CHECK(tf.model() == nullptr);
}
