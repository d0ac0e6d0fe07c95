#include <atomic>
#include <cstdlib>
#include <string_view>

#include "assocvar/simd/kernels.hpp"

namespace assocvar::simd {
namespace {

Backend detect() {
  if (const char* env = std::getenv("ASSOCVAR_SIMD"); env && std::string_view(env) == "scalar")
    return Backend::Scalar;
  return avx2_supported() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

}  // namespace

bool avx2_supported() {
#if defined(ASSOCVAR_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

const char* backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

const KernelTable& kernels(Backend b) {
#ifdef ASSOCVAR_HAVE_AVX2_KERNELS
  if (b == Backend::Avx2 && avx2_supported()) return avx2::table;
#endif
  (void)b;
  return scalar::table;
}

const KernelTable& kernels() { return kernels(active_backend()); }

bool set_backend(Backend b) {
  if (b == Backend::Avx2 && !avx2_supported()) return false;
  current().store(b, std::memory_order_relaxed);
  return true;
}

}  // namespace assocvar::simd
