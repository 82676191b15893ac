// AVX2 + FMA kernels. Each __m256d holds two complex doubles laid out as
// [re0, im0, re1, im1]; an odd trailing element falls back to scalar code.
//
// Functions carry target attributes instead of the TU being built with
// -mavx2, so no AVX2 code leaks into inline functions shared with other TUs.

#include <immintrin.h>

#include <cmath>

#include "kernels_internal.hpp"

#define VSALISP_AVX2 __attribute__((target("avx2,fma")))

namespace vsalisp::kernels {
namespace {

inline const double* raw(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* raw(cplx* p) { return reinterpret_cast<double*>(p); }

VSALISP_AVX2 inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

VSALISP_AVX2 inline __m256d cmul_conj(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmsubadd_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

VSALISP_AVX2 inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

VSALISP_AVX2 void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(raw(a + i));
    const __m256d vb = _mm256_loadu_pd(raw(b + i));
    _mm256_storeu_pd(raw(out + i), cmul(va, vb));
  }
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = cplx(ar * br - ai * bi, ar * bi + ai * br);
  }
}

VSALISP_AVX2 void mul_conj(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(raw(a + i));
    const __m256d vb = _mm256_loadu_pd(raw(b + i));
    _mm256_storeu_pd(raw(out + i), cmul_conj(va, vb));
  }
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = cplx(ar * br + ai * bi, ai * br - ar * bi);
  }
}

VSALISP_AVX2 void add(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    _mm256_storeu_pd(raw(out + i),
                     _mm256_add_pd(_mm256_loadu_pd(raw(a + i)), _mm256_loadu_pd(raw(b + i))));
  }
  for (; i < n; ++i) out[i] = a[i] + b[i];
}

VSALISP_AVX2 void sub(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    _mm256_storeu_pd(raw(out + i),
                     _mm256_sub_pd(_mm256_loadu_pd(raw(a + i)), _mm256_loadu_pd(raw(b + i))));
  }
  for (; i < n; ++i) out[i] = a[i] - b[i];
}

VSALISP_AVX2 void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const __m256d p_re = _mm256_set1_pd(alpha.real());
  const __m256d p_im = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(raw(x + i));
    const __m256d x_sw = _mm256_permute_pd(vx, 0x5);
    const __m256d prod = _mm256_fmaddsub_pd(vx, p_re, _mm256_mul_pd(x_sw, p_im));
    _mm256_storeu_pd(raw(y + i), _mm256_add_pd(_mm256_loadu_pd(raw(y + i)), prod));
  }
  const double pr = alpha.real(), pi = alpha.imag();
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = cplx(y[i].real() + (pr * xr - pi * xi), y[i].imag() + (pr * xi + pi * xr));
  }
}

VSALISP_AVX2 void normalize(const cplx* in, cplx* out, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d ones = _mm256_set1_pd(1.0);
  const __m256d unit = _mm256_setr_pd(1.0, 0.0, 1.0, 0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(raw(in + i));
    const __m256d sq = _mm256_mul_pd(v, v);
    const __m256d mag = _mm256_sqrt_pd(_mm256_add_pd(sq, _mm256_permute_pd(sq, 0x5)));
    const __m256d is_zero = _mm256_cmp_pd(mag, zero, _CMP_EQ_OQ);
    const __m256d safe = _mm256_blendv_pd(mag, ones, is_zero);
    _mm256_storeu_pd(raw(out + i), _mm256_blendv_pd(_mm256_div_pd(v, safe), unit, is_zero));
  }
  for (; i < n; ++i) {
    const double re = in[i].real(), im = in[i].imag();
    const double mag = std::sqrt(re * re + im * im);
    out[i] = mag == 0.0 ? cplx(1.0, 0.0) : cplx(re / mag, im / mag);
  }
}

VSALISP_AVX2 double dot_re(const cplx* a, const cplx* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(raw(a + i)), _mm256_loadu_pd(raw(b + i)), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(raw(a + i + 2)), _mm256_loadu_pd(raw(b + i + 2)),
                           acc1);
  }
  for (; i + 2 <= n; i += 2) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(raw(a + i)), _mm256_loadu_pd(raw(b + i)), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
  return acc;
}

VSALISP_AVX2 cplx dot(const cplx* a, const cplx* b, std::size_t n) {
  // acc_re lanes hold (ar*br, ai*bi); acc_x lanes hold (ai*br, ar*bi).
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_x = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(raw(a + i));
    const __m256d vb = _mm256_loadu_pd(raw(b + i));
    acc_re = _mm256_fmadd_pd(va, vb, acc_re);
    acc_x = _mm256_fmadd_pd(_mm256_permute_pd(va, 0x5), vb, acc_x);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc_x);
  double re = hsum(acc_re);
  double im = (lanes[1] + lanes[3]) - (lanes[0] + lanes[2]);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

constexpr KernelTable kAvx2Table{
    Isa::kAvx2, mul, mul_conj, add, sub, axpy, normalize, dot_re, dot,
};

}  // namespace

const KernelTable& avx2_table() noexcept { return kAvx2Table; }

bool avx2_supported() noexcept {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

}  // namespace vsalisp::kernels
