#include <cstdlib>
#include <cstring>

#include "mirp/kernels/kernels.hpp"

namespace mirp::kernels {

#ifdef MIRP_HAVE_AVX2
const KernelSet& avx2_kernel_set();
#endif

bool cpu_has_avx2() {
#if defined(MIRP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelSet* avx2_kernels() {
#ifdef MIRP_HAVE_AVX2
  if (cpu_has_avx2()) return &avx2_kernel_set();
#endif
  return nullptr;
}

const KernelSet& active() {
  static const KernelSet& set = [&]() -> const KernelSet& {
    const char* env = std::getenv("MIRP_ISA");
    if (env && std::strcmp(env, "scalar") == 0) return scalar_kernels();
    if (const KernelSet* v = avx2_kernels()) return *v;
    return scalar_kernels();
  }();
  return set;
}

std::string isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

}  // namespace mirp::kernels
