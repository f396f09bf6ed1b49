#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"

namespace medcascade::simd {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::scalar, &detail::dot_scalar, &detail::count_above_scalar,
                                 &detail::masked_argmax_scalar};
  return table;
}

const KernelTable* avx2_kernels() {
#if defined(MEDCASCADE_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  static const KernelTable table{Isa::avx2, &detail::dot_avx2, &detail::count_above_avx2,
                                 &detail::masked_argmax_avx2};
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* forced = std::getenv("MEDCASCADE_SIMD");
    if (forced && std::string(forced) == "scalar") return scalar_kernels();
    if (const KernelTable* wide = avx2_kernels()) return *wide;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace medcascade::simd
