#include "impl.hpp"

#include <algorithm>

namespace chaoskit::kernels::detail {
namespace {

void equal_mask(const Symbol* a, const Symbol* b, std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] == b[i] ? 1 : 0;
}

std::size_t first_mismatch(const Symbol* a, const Symbol* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return i;
  return n;
}

void min_into(std::uint32_t* acc, const std::uint32_t* v, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] = std::min(acc[i], v[i]);
}

void max_into(std::uint32_t* acc, const std::uint32_t* v, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] = std::max(acc[i], v[i]);
}

std::size_t count_at_least(const std::uint32_t* v, std::size_t n, std::uint32_t threshold) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += v[i] >= threshold;
  return c;
}

std::size_t count_at_most(const std::uint32_t* v, std::size_t n, std::uint32_t threshold) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += v[i] <= threshold;
  return c;
}

}  // namespace

const Table& scalar_table() {
  static const Table t{equal_mask, first_mismatch, min_into, max_into, count_at_least,
                       count_at_most};
  return t;
}

}  // namespace chaoskit::kernels::detail
