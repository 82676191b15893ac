#pragma once

// Elementwise complex-double kernels behind every hypervector operation.
//
// Each instruction set provides one KernelTable. The scalar table is the
// reference; vector tables must agree with it to within rounding (see
// tests/test_kernels.cpp). Pointers address interleaved (re, im) pairs, the
// layout std::complex<double> guarantees. Outputs may alias inputs.

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace vsalisp::kernels {

using cplx = std::complex<double>;

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
  Isa isa;

  // out = a * b
  void (*mul)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
  // out = a * conj(b)
  void (*mul_conj)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
  void (*add)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
  void (*sub)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
  // y += alpha * x
  void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  // out = in / |in|, zero elements become 1 + 0i
  void (*normalize)(const cplx* in, cplx* out, std::size_t n);
  // Re(sum conj(a) * b)
  double (*dot_re)(const cplx* a, const cplx* b, std::size_t n);
  // sum conj(a) * b
  cplx (*dot)(const cplx* a, const cplx* b, std::size_t n);
};

const KernelTable& scalar_table() noexcept;

// nullptr when the ISA was not compiled in or the running CPU lacks it.
const KernelTable* table_for(Isa isa) noexcept;

// Every table usable on this host, scalar first.
std::vector<const KernelTable*> available_tables();

// Best table for this host, chosen once. VSALISP_KERNELS=scalar|avx2|neon
// in the environment overrides the choice when that table is available.
const KernelTable& active() noexcept;

}  // namespace vsalisp::kernels
