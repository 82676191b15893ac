#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace vsalisp::kernels {

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

const KernelTable* table_for(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return &scalar_table();
    case Isa::kAvx2:
#if defined(VSALISP_HAVE_AVX2)
      if (avx2_supported()) return &avx2_table();
#endif
      return nullptr;
    case Isa::kNeon:
#if defined(VSALISP_HAVE_NEON)
      return &neon_table();
#else
      return nullptr;
#endif
  }
  return nullptr;
}

std::vector<const KernelTable*> available_tables() {
  std::vector<const KernelTable*> out;
  for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
    if (const KernelTable* t = table_for(isa)) out.push_back(t);
  }
  return out;
}

namespace {

const KernelTable& select() noexcept {
  if (const char* forced = std::getenv("VSALISP_KERNELS")) {
    const std::string_view want(forced);
    for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
      if (want == isa_name(isa)) {
        if (const KernelTable* t = table_for(isa)) return *t;
      }
    }
  }
  for (Isa isa : {Isa::kAvx2, Isa::kNeon}) {
    if (const KernelTable* t = table_for(isa)) return *t;
  }
  return scalar_table();
}

}  // namespace

const KernelTable& active() noexcept {
  static const KernelTable& chosen = select();
  return chosen;
}

}  // namespace vsalisp::kernels
