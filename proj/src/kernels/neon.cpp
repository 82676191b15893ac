// AArch64 NEON kernels. One float64x2_t holds a single complex double, so
// these loops trade width for freedom from shuffles; NEON is baseline on
// AArch64 and needs no runtime probe.

#include <arm_neon.h>

#include <cmath>

#include "kernels_internal.hpp"

namespace vsalisp::kernels {
namespace {

inline const double* raw(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* raw(cplx* p) { return reinterpret_cast<double*>(p); }

// a * b for one complex pair: [ar*br - ai*bi, ar*bi + ai*br]
inline float64x2_t cmul(float64x2_t a, float64x2_t b) {
  const float64x2_t a_re = vdupq_laneq_f64(a, 0);
  const float64x2_t a_im = vdupq_laneq_f64(a, 1);
  const float64x2_t b_sw = vextq_f64(b, b, 1);               // [bi, br]
  const float64x2_t sign = {-1.0, 1.0};
  return vfmaq_f64(vmulq_f64(a_re, b), vmulq_f64(a_im, b_sw), sign);
}

// a * conj(b): [ar*br + ai*bi, ai*br - ar*bi]
inline float64x2_t cmul_conj(float64x2_t a, float64x2_t b) {
  const float64x2_t b_conj = vmulq_f64(b, float64x2_t{1.0, -1.0});
  return cmul(a, b_conj);
}

void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    vst1q_f64(raw(out + i), cmul(vld1q_f64(raw(a + i)), vld1q_f64(raw(b + i))));
  }
}

void mul_conj(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    vst1q_f64(raw(out + i), cmul_conj(vld1q_f64(raw(a + i)), vld1q_f64(raw(b + i))));
  }
}

void add(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    vst1q_f64(raw(out + i), vaddq_f64(vld1q_f64(raw(a + i)), vld1q_f64(raw(b + i))));
  }
}

void sub(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    vst1q_f64(raw(out + i), vsubq_f64(vld1q_f64(raw(a + i)), vld1q_f64(raw(b + i))));
  }
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const float64x2_t va = {alpha.real(), alpha.imag()};
  for (std::size_t i = 0; i < n; ++i) {
    vst1q_f64(raw(y + i), vaddq_f64(vld1q_f64(raw(y + i)), cmul(va, vld1q_f64(raw(x + i)))));
  }
}

void normalize(const cplx* in, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = in[i].real(), im = in[i].imag();
    const double mag = std::sqrt(re * re + im * im);
    out[i] = mag == 0.0 ? cplx(1.0, 0.0) : cplx(re / mag, im / mag);
  }
}

double dot_re(const cplx* a, const cplx* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(raw(a + i)), vld1q_f64(raw(b + i)));
    acc1 = vfmaq_f64(acc1, vld1q_f64(raw(a + i + 1)), vld1q_f64(raw(b + i + 1)));
  }
  for (; i < n; ++i) acc0 = vfmaq_f64(acc0, vld1q_f64(raw(a + i)), vld1q_f64(raw(b + i)));
  return vaddvq_f64(vaddq_f64(acc0, acc1));
}

cplx dot(const cplx* a, const cplx* b, std::size_t n) {
  float64x2_t acc_re = vdupq_n_f64(0.0);  // (ar*br, ai*bi)
  float64x2_t acc_x = vdupq_n_f64(0.0);   // (ai*br, ar*bi)
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t va = vld1q_f64(raw(a + i));
    const float64x2_t vb = vld1q_f64(raw(b + i));
    acc_re = vfmaq_f64(acc_re, va, vb);
    acc_x = vfmaq_f64(acc_x, vextq_f64(va, va, 1), vb);
  }
  return {vaddvq_f64(acc_re), vgetq_lane_f64(acc_x, 1) - vgetq_lane_f64(acc_x, 0)};
}

constexpr KernelTable kNeonTable{
    Isa::kNeon, mul, mul_conj, add, sub, axpy, normalize, dot_re, dot,
};

}  // namespace

const KernelTable& neon_table() noexcept { return kNeonTable; }

}  // namespace vsalisp::kernels
