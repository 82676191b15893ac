#pragma once

#include "vsalisp/kernels.hpp"

namespace vsalisp::kernels {

#if defined(VSALISP_HAVE_AVX2)
// Compiled with per-function target attributes; callers must check
// avx2_supported() before using the table.
const KernelTable& avx2_table() noexcept;
bool avx2_supported() noexcept;
#endif

#if defined(VSALISP_HAVE_NEON)
const KernelTable& neon_table() noexcept;
#endif

}  // namespace vsalisp::kernels
