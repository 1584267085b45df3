#include "slowlight/kernels.hpp"

namespace slowlight::kernels::scalar {
namespace {

// Explicit component arithmetic: std::complex operator* routes through the
// C99 inf/nan recovery path.
void complex_multiply(const Complex* a, const Complex* b, Complex* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = Complex(ar * br - ai * bi, ar * bi + ai * br);
  }
}

void complex_scale(const Complex* z, const double* g, Complex* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = Complex(z[i].real() * g[i], z[i].imag() * g[i]);
}

void squared_magnitude(const Complex* z, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
}

void wiener_gain(const double* a, double eps2, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double den = a[i] * a[i] + eps2;
    out[i] = den > 0.0 ? a[i] / den : 0.0;
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_squares(const Complex* z, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    s += z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
  return s;
}

}  // namespace

const KernelTable kTable{
  Isa::Scalar, complex_multiply, complex_scale, squared_magnitude,
  wiener_gain, dot, sum_squares,
};

}  // namespace slowlight::kernels::scalar
