#include "slowlight/kernels.hpp"

#include "slowlight/error.hpp"

#include <cstdlib>
#include <string>

namespace slowlight::kernels {

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(SLOWLIGHT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) {
#if defined(SLOWLIGHT_HAVE_AVX2)
  if (isa == Isa::Avx2 && supported(Isa::Avx2)) return avx2::kTable;
#endif
  (void)isa;
  return scalar::kTable;
}

namespace {

const KernelTable& resolve() {
  if (const char* env = std::getenv("SLOWLIGHT_SIMD"); env && std::string(env) == "scalar")
    return scalar::kTable;
  return table(Isa::Avx2);
}

void check_len(std::size_t a, std::size_t b, const char* what) {
  if (a != b)
    fail(ErrorKind::ContractViolation,
         std::string(what) + ": length mismatch (" + std::to_string(a) + " vs " +
           std::to_string(b) + ")");
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& t = resolve();
  return t;
}

void complex_multiply(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out) {
  check_len(a.size(), b.size(), "complex_multiply");
  check_len(a.size(), out.size(), "complex_multiply");
  active().complex_multiply(a.data(), b.data(), out.data(), a.size());
}

void complex_scale(std::span<const Complex> z, std::span<const double> g, std::span<Complex> out) {
  check_len(z.size(), g.size(), "complex_scale");
  check_len(z.size(), out.size(), "complex_scale");
  active().complex_scale(z.data(), g.data(), out.data(), z.size());
}

void squared_magnitude(std::span<const Complex> z, std::span<double> out) {
  check_len(z.size(), out.size(), "squared_magnitude");
  active().squared_magnitude(z.data(), out.data(), z.size());
}

void wiener_gain(std::span<const double> a, double eps2, std::span<double> out) {
  check_len(a.size(), out.size(), "wiener_gain");
  active().wiener_gain(a.data(), eps2, out.data(), a.size());
}

double dot(std::span<const double> a, std::span<const double> b) {
  check_len(a.size(), b.size(), "dot");
  return active().dot(a.data(), b.data(), a.size());
}

double sum(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += v;
  return s;
}

double sum_squares(std::span<const double> a) {
  return active().dot(a.data(), a.data(), a.size());
}

double sum_squares(std::span<const Complex> z) {
  return active().sum_squares(z.data(), z.size());
}

}  // namespace slowlight::kernels
