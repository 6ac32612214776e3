#include "ordexp/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace ordexp::kernels {

#ifdef ORDEXP_HAVE_AVX2
const Ops* avx2_ops_impl();

static bool cpu_has_avx2() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

const Ops* avx2_ops() { return cpu_has_avx2() ? avx2_ops_impl() : nullptr; }
#else
const Ops* avx2_ops() { return nullptr; }
#endif

const Ops& active() {
  static const Ops* selected = [] {
    const char* pref = std::getenv("ORDEXP_SIMD");
    if (pref && std::strcmp(pref, "scalar") == 0) return &scalar_ops();
    if (pref && std::strcmp(pref, "avx2") == 0) {
      if (const Ops* v = avx2_ops()) return v;
      return &scalar_ops();
    }
    if (const Ops* v = avx2_ops()) return v;
    return &scalar_ops();
  }();
  return *selected;
}

}  // namespace ordexp::kernels
