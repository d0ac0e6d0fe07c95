// Compiled with -mavx2; only reached through the dispatch table after a
// CPU feature check.
#include "assocvar/simd/kernels.hpp"

#include <immintrin.h>

namespace assocvar::simd::avx2 {
namespace {

struct ModConst {
  __m256i p64;
  __m256i pm1_64;
  __m256d pinv;
  __m256i p32;
};

inline ModConst make_const(std::uint32_t p) {
  return {_mm256_set1_epi64x(p), _mm256_set1_epi64x(std::int64_t{p} - 1),
          _mm256_set1_pd(1.0 / static_cast<double>(p)), _mm256_set1_epi32(static_cast<int>(p))};
}

// Four lanes of (a*b) mod p. The quotient is estimated in double precision
// (off by at most one for p < 2^31) and corrected with exact 64-bit lanes.
inline __m128i mulmod4(__m128i a, __m128i b, const ModConst& k) {
  __m256i prod = _mm256_mul_epu32(_mm256_cvtepu32_epi64(a), _mm256_cvtepu32_epi64(b));
  __m256d ab = _mm256_mul_pd(_mm256_cvtepi32_pd(a), _mm256_cvtepi32_pd(b));
  __m256d qd = _mm256_floor_pd(_mm256_mul_pd(ab, k.pinv));
  __m256i q = _mm256_cvtepu32_epi64(_mm256_cvttpd_epi32(qd));
  __m256i r = _mm256_sub_epi64(prod, _mm256_mul_epu32(q, k.p64));
  __m256i neg = _mm256_cmpgt_epi64(_mm256_setzero_si256(), r);
  r = _mm256_add_epi64(r, _mm256_and_si256(neg, k.p64));
  __m256i over = _mm256_cmpgt_epi64(r, k.pm1_64);
  r = _mm256_sub_epi64(r, _mm256_and_si256(over, k.p64));
  __m256i packed = _mm256_permutevar8x32_epi32(r, _mm256_setr_epi32(0, 2, 4, 6, 0, 2, 4, 6));
  return _mm256_castsi256_si128(packed);
}

inline __m256i mulmod8(__m256i a, __m256i b, const ModConst& k) {
  __m128i lo = mulmod4(_mm256_castsi256_si128(a), _mm256_castsi256_si128(b), k);
  __m128i hi = mulmod4(_mm256_extracti128_si256(a, 1), _mm256_extracti128_si256(b, 1), k);
  return _mm256_inserti128_si256(_mm256_castsi128_si256(lo), hi, 1);
}

// Inputs < p < 2^31, so the sum fits in 32 bits and min(s, s - p) picks the
// reduced value (s - p wraps above s when s < p).
inline __m256i addmod8(__m256i a, __m256i b, const ModConst& k) {
  __m256i s = _mm256_add_epi32(a, b);
  return _mm256_min_epu32(s, _mm256_sub_epi32(s, k.p32));
}

inline std::uint32_t mulmod1(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
}

inline __m256i load(const std::uint32_t* ptr) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(ptr));
}
inline void store(std::uint32_t* ptr, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(ptr), v);
}

void axpy(std::uint32_t* y, std::uint32_t a, const std::uint32_t* x, std::size_t n,
          std::uint32_t p) {
  const ModConst k = make_const(p);
  const __m256i av = _mm256_set1_epi32(static_cast<int>(a));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) store(y + i, addmod8(load(y + i), mulmod8(av, load(x + i), k), k));
  for (; i < n; ++i) {
    std::uint32_t s = y[i] + mulmod1(a, x[i], p);
    y[i] = s >= p ? s - p : s;
  }
}

void scale(std::uint32_t* y, std::uint32_t a, std::size_t n, std::uint32_t p) {
  const ModConst k = make_const(p);
  const __m256i av = _mm256_set1_epi32(static_cast<int>(a));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) store(y + i, mulmod8(av, load(y + i), k));
  for (; i < n; ++i) y[i] = mulmod1(a, y[i], p);
}

void mul(const std::uint32_t* x, const std::uint32_t* y, std::uint32_t* out, std::size_t n,
         std::uint32_t p) {
  const ModConst k = make_const(p);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) store(out + i, mulmod8(load(x + i), load(y + i), k));
  for (; i < n; ++i) out[i] = mulmod1(x[i], y[i], p);
}

void add(std::uint32_t* y, const std::uint32_t* x, std::size_t n, std::uint32_t p) {
  const ModConst k = make_const(p);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) store(y + i, addmod8(load(y + i), load(x + i), k));
  for (; i < n; ++i) {
    std::uint32_t s = y[i] + x[i];
    y[i] = s >= p ? s - p : s;
  }
}

}  // namespace

const KernelTable table{axpy, scale, mul, add};

}  // namespace assocvar::simd::avx2
