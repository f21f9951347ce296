#include "impl.hpp"

#include <arm_neon.h>

#include <algorithm>

namespace chaoskit::kernels::detail {
namespace {

static_assert(sizeof(Symbol) == 4, "NEON kernels assume 32-bit symbols");

void equal_mask(const Symbol* a, const Symbol* b, std::uint8_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const uint32x4_t eq = vceqq_u32(vld1q_u32(a + i), vld1q_u32(b + i));
    out[i + 0] = static_cast<std::uint8_t>(vgetq_lane_u32(eq, 0) & 1);
    out[i + 1] = static_cast<std::uint8_t>(vgetq_lane_u32(eq, 1) & 1);
    out[i + 2] = static_cast<std::uint8_t>(vgetq_lane_u32(eq, 2) & 1);
    out[i + 3] = static_cast<std::uint8_t>(vgetq_lane_u32(eq, 3) & 1);
  }
  for (; i < n; ++i) out[i] = a[i] == b[i] ? 1 : 0;
}

std::size_t first_mismatch(const Symbol* a, const Symbol* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const uint32x4_t eq = vceqq_u32(vld1q_u32(a + i), vld1q_u32(b + i));
    if (vminvq_u32(eq) == 0) break;
  }
  for (; i < n; ++i)
    if (a[i] != b[i]) return i;
  return n;
}

void min_into(std::uint32_t* acc, const std::uint32_t* v, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) vst1q_u32(acc + i, vminq_u32(vld1q_u32(acc + i), vld1q_u32(v + i)));
  for (; i < n; ++i) acc[i] = std::min(acc[i], v[i]);
}

void max_into(std::uint32_t* acc, const std::uint32_t* v, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) vst1q_u32(acc + i, vmaxq_u32(vld1q_u32(acc + i), vld1q_u32(v + i)));
  for (; i < n; ++i) acc[i] = std::max(acc[i], v[i]);
}

std::size_t count_at_least(const std::uint32_t* v, std::size_t n, std::uint32_t threshold) {
  const uint32x4_t t = vdupq_n_u32(threshold);
  std::size_t c = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const uint32x4_t ge = vshrq_n_u32(vcgeq_u32(vld1q_u32(v + i), t), 31);
    c += vaddvq_u32(ge);
  }
  for (; i < n; ++i) c += v[i] >= threshold;
  return c;
}

std::size_t count_at_most(const std::uint32_t* v, std::size_t n, std::uint32_t threshold) {
  const uint32x4_t t = vdupq_n_u32(threshold);
  std::size_t c = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const uint32x4_t le = vshrq_n_u32(vcleq_u32(vld1q_u32(v + i), t), 31);
    c += vaddvq_u32(le);
  }
  for (; i < n; ++i) c += v[i] <= threshold;
  return c;
}

}  // namespace

const Table& neon_table() {
  static const Table t{equal_mask, first_mismatch, min_into, max_into, count_at_least,
                       count_at_most};
  return t;
}

}  // namespace chaoskit::kernels::detail
