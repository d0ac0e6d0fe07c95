#pragma once

// Modular vector kernels over F_p, p < 2^31.
//
// Every kernel has a portable scalar reference implementation and, on x86-64,
// an AVX2 variant. The active table is chosen once at startup from the CPU
// feature bits; ASSOCVAR_SIMD=scalar in the environment forces the reference
// path. Inputs must already be reduced into [0, p).

#include <cstddef>
#include <cstdint>
#include <span>

namespace assocvar::simd {

enum class Backend { Scalar, Avx2 };

struct KernelTable {
  /// y[i] = (y[i] + a * x[i]) mod p
  void (*axpy)(std::uint32_t* y, std::uint32_t a, const std::uint32_t* x, std::size_t n,
               std::uint32_t p);
  /// y[i] = (a * y[i]) mod p
  void (*scale)(std::uint32_t* y, std::uint32_t a, std::size_t n, std::uint32_t p);
  /// out[i] = (x[i] * y[i]) mod p; out may alias x or y.
  void (*mul)(const std::uint32_t* x, const std::uint32_t* y, std::uint32_t* out,
              std::size_t n, std::uint32_t p);
  /// y[i] = (y[i] + x[i]) mod p
  void (*add)(std::uint32_t* y, const std::uint32_t* x, std::size_t n, std::uint32_t p);
};

namespace scalar {
extern const KernelTable table;
}

#if defined(__x86_64__) || defined(_M_X64)
#define ASSOCVAR_HAVE_AVX2_KERNELS 1
namespace avx2 {
extern const KernelTable table;
}
#endif

bool avx2_supported();
Backend active_backend();
const char* backend_name(Backend b);
/// Kernel table for a specific backend; falls back to scalar if unsupported.
const KernelTable& kernels(Backend b);
const KernelTable& kernels();

/// Overrides the runtime choice (tests use this to pin a backend).
/// Returns false if the backend is not available on this CPU.
bool set_backend(Backend b);

inline void axpy_mod(std::span<std::uint32_t> y, std::uint32_t a,
                     std::span<const std::uint32_t> x, std::uint32_t p) {
  kernels().axpy(y.data(), a, x.data(), y.size(), p);
}
inline void scale_mod(std::span<std::uint32_t> y, std::uint32_t a, std::uint32_t p) {
  kernels().scale(y.data(), a, y.size(), p);
}
inline void mul_mod(std::span<const std::uint32_t> x, std::span<const std::uint32_t> y,
                    std::span<std::uint32_t> out, std::uint32_t p) {
  kernels().mul(x.data(), y.data(), out.data(), out.size(), p);
}
inline void add_mod(std::span<std::uint32_t> y, std::span<const std::uint32_t> x,
                    std::uint32_t p) {
  kernels().add(y.data(), x.data(), y.size(), p);
}

}  // namespace assocvar::simd
