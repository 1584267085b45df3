#pragma once

// Elementwise and reduction kernels behind the spectral pipeline. Every
// kernel has a portable scalar reference; an AVX2+FMA variant is selected at
// runtime when the CPU supports it (override with SLOWLIGHT_SIMD=scalar).

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace slowlight::kernels {

using Complex = std::complex<double>;

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

struct KernelTable {
  Isa isa;
  // out[i] = a[i] * b[i]
  void (*complex_multiply)(const Complex* a, const Complex* b, Complex* out, std::size_t n);
  // out[i] = z[i] * g[i], g real
  void (*complex_scale)(const Complex* z, const double* g, Complex* out, std::size_t n);
  // out[i] = |z[i]|^2
  void (*squared_magnitude)(const Complex* z, double* out, std::size_t n);
  // out[i] = a[i] / (a[i]^2 + eps2)
  void (*wiener_gain)(const double* a, double eps2, double* out, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum_squares)(const Complex* z, std::size_t n);
};

/// Table for the best ISA available on this CPU (resolved once).
const KernelTable& active();

/// Table for a specific ISA; falls back to scalar if unsupported here.
const KernelTable& table(Isa isa);

bool supported(Isa isa) noexcept;

// Span front ends over the active table. Lengths must agree.
void complex_multiply(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out);
void complex_scale(std::span<const Complex> z, std::span<const double> g, std::span<Complex> out);
void squared_magnitude(std::span<const Complex> z, std::span<double> out);
void wiener_gain(std::span<const double> a, double eps2, std::span<double> out);
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
double sum_squares(std::span<const double> a);
double sum_squares(std::span<const Complex> z);

namespace scalar {
extern const KernelTable kTable;
}
#if defined(SLOWLIGHT_HAVE_AVX2)
namespace avx2 {
extern const KernelTable kTable;
}
#endif

}  // namespace slowlight::kernels
