// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include "slowlight/kernels.hpp"

#include <immintrin.h>

namespace slowlight::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Two interleaved complex values per register: [re0 im0 re1 im1].
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

void complex_multiply(const Complex* a, const Complex* b, Complex* out, std::size_t n) {
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  auto* po = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    _mm256_storeu_pd(po + 2 * i, cmul(va, vb));
  }
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = Complex(ar * br - ai * bi, ar * bi + ai * br);
  }
}

void complex_scale(const Complex* z, const double* g, Complex* out, std::size_t n) {
  const auto* pz = reinterpret_cast<const double*>(z);
  auto* po = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    // [g0 g0 g1 g1]
    const __m128d gg = _mm_loadu_pd(g + i);
    const __m256d gv = _mm256_permute4x64_pd(_mm256_castpd128_pd256(gg), 0x50);
    _mm256_storeu_pd(po + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(pz + 2 * i), gv));
  }
  for (; i < n; ++i) out[i] = Complex(z[i].real() * g[i], z[i].imag() * g[i]);
}

void squared_magnitude(const Complex* z, double* out, std::size_t n) {
  const auto* pz = reinterpret_cast<const double*>(z);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(pz + 2 * i);
    const __m256d v1 = _mm256_loadu_pd(pz + 2 * i + 4);
    // hadd gives [|z0| |z2| |z1| |z3|] squared; permute back to order.
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
    _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(h, 0xD8));
  }
  for (; i < n; ++i)
    out[i] = z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
}

void wiener_gain(const double* a, double eps2, double* out, std::size_t n) {
  const __m256d e = _mm256_set1_pd(eps2);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d den = _mm256_fmadd_pd(va, va, e);
    const __m256d q = _mm256_div_pd(va, den);
    const __m256d ok = _mm256_cmp_pd(den, zero, _CMP_GT_OQ);
    _mm256_storeu_pd(out + i, _mm256_and_pd(q, ok));
  }
  for (; i < n; ++i) {
    const double den = a[i] * a[i] + eps2;
    out[i] = den > 0.0 ? a[i] / den : 0.0;
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_squares(const Complex* z, std::size_t n) {
  const auto* p = reinterpret_cast<const double*>(z);
  return dot(p, p, 2 * n);
}

}  // namespace

const KernelTable kTable{
  Isa::Avx2, complex_multiply, complex_scale, squared_magnitude,
  wiener_gain, dot, sum_squares,
};

}  // namespace slowlight::kernels::avx2
