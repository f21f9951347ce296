#include "impl.hpp"

#include <immintrin.h>

#include <algorithm>

namespace chaoskit::kernels::detail {
namespace {

static_assert(sizeof(Symbol) == 4, "AVX2 kernels assume 32-bit symbols");

void equal_mask(const Symbol* a, const Symbol* b, std::uint8_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const int bits = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(va, vb)));
    for (int j = 0; j < 8; ++j) out[i + j] = static_cast<std::uint8_t>((bits >> j) & 1);
  }
  for (; i < n; ++i) out[i] = a[i] == b[i] ? 1 : 0;
}

std::size_t first_mismatch(const Symbol* a, const Symbol* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const int bits = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(va, vb)));
    if (bits != 0xff) return i + static_cast<std::size_t>(__builtin_ctz(~bits & 0xff));
  }
  for (; i < n; ++i)
    if (a[i] != b[i]) return i;
  return n;
}

void min_into(std::uint32_t* acc, const std::uint32_t* v, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + i));
    const __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + i));
    x = _mm256_min_epu32(x, y);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + i), x);
  }
  for (; i < n; ++i) acc[i] = std::min(acc[i], v[i]);
}

void max_into(std::uint32_t* acc, const std::uint32_t* v, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + i));
    const __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + i));
    x = _mm256_max_epu32(x, y);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + i), x);
  }
  for (; i < n; ++i) acc[i] = std::max(acc[i], v[i]);
}

// v >= t  <=>  max(v, t) == v  (unsigned)
std::size_t count_at_least(const std::uint32_t* v, std::size_t n, std::uint32_t threshold) {
  const __m256i t = _mm256_set1_epi32(static_cast<int>(threshold));
  std::size_t c = 0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + i));
    const __m256i ge = _mm256_cmpeq_epi32(_mm256_max_epu32(x, t), x);
    c += static_cast<std::size_t>(
        __builtin_popcount(_mm256_movemask_ps(_mm256_castsi256_ps(ge))));
  }
  for (; i < n; ++i) c += v[i] >= threshold;
  return c;
}

// v <= t  <=>  min(v, t) == v  (unsigned)
std::size_t count_at_most(const std::uint32_t* v, std::size_t n, std::uint32_t threshold) {
  const __m256i t = _mm256_set1_epi32(static_cast<int>(threshold));
  std::size_t c = 0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + i));
    const __m256i le = _mm256_cmpeq_epi32(_mm256_min_epu32(x, t), x);
    c += static_cast<std::size_t>(
        __builtin_popcount(_mm256_movemask_ps(_mm256_castsi256_ps(le))));
  }
  for (; i < n; ++i) c += v[i] <= threshold;
  return c;
}

}  // namespace

const Table& avx2_table() {
  static const Table t{equal_mask, first_mismatch, min_into, max_into, count_at_least,
                       count_at_most};
  return t;
}

}  // namespace chaoskit::kernels::detail
