#include "assocvar/simd/kernels.hpp"

namespace assocvar::simd::scalar {
namespace {

inline std::uint32_t mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
}

void axpy(std::uint32_t* y, std::uint32_t a, const std::uint32_t* x, std::size_t n,
          std::uint32_t p) {
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t s = y[i] + std::uint64_t{a} * x[i] % p;
    y[i] = static_cast<std::uint32_t>(s >= p ? s - p : s);
  }
}

void scale(std::uint32_t* y, std::uint32_t a, std::size_t n, std::uint32_t p) {
  for (std::size_t i = 0; i < n; ++i) y[i] = mulmod(a, y[i], p);
}

void mul(const std::uint32_t* x, const std::uint32_t* y, std::uint32_t* out, std::size_t n,
         std::uint32_t p) {
  for (std::size_t i = 0; i < n; ++i) out[i] = mulmod(x[i], y[i], p);
}

void add(std::uint32_t* y, const std::uint32_t* x, std::size_t n, std::uint32_t p) {
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t s = y[i] + x[i];
    y[i] = s >= p ? s - p : s;
  }
}

}  // namespace

const KernelTable table{axpy, scale, mul, add};

}  // namespace assocvar::simd::scalar
