#pragma once

// Data-parallel inner loops behind the density counters.
//
// Every routine has a scalar reference implementation; vectorized variants
// (AVX2 on x86-64, NEON on aarch64) are selected at runtime from CPU features.
// The environment variable CHAOSKIT_SIMD=scalar|avx2|neon overrides the choice
// (an unavailable request falls back to scalar).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace chaoskit {

using Symbol = std::uint32_t;

namespace kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

struct Table {
  // out[i] = a[i] == b[i]
  void (*equal_mask)(const Symbol* a, const Symbol* b, std::uint8_t* out, std::size_t n);
  // index of the first i with a[i] != b[i], or n
  std::size_t (*first_mismatch)(const Symbol* a, const Symbol* b, std::size_t n);
  // acc[i] = min(acc[i], v[i])
  void (*min_into)(std::uint32_t* acc, const std::uint32_t* v, std::size_t n);
  // acc[i] = max(acc[i], v[i])
  void (*max_into)(std::uint32_t* acc, const std::uint32_t* v, std::size_t n);
  // #{i : v[i] >= threshold}
  std::size_t (*count_at_least)(const std::uint32_t* v, std::size_t n, std::uint32_t threshold);
  // #{i : v[i] <= threshold}
  std::size_t (*count_at_most)(const std::uint32_t* v, std::size_t n, std::uint32_t threshold);
};

/// Kernel table for an ISA; throws PreconditionViolation if not compiled in or unsupported.
const Table& table(Isa isa);

/// ISAs that are both compiled in and supported by this CPU (scalar first).
std::vector<Isa> available();

/// The ISA chosen for this process.
Isa active();

const Table& dispatch();

/// Agreement run lengths capped at `cap`: out[i] = number of consecutive
/// positions j >= i with a[j] == b[j], truncated at the end of the inputs.
/// Values near the end are lower bounds; callers size inputs so the
/// positions they read have full lookahead.
void agreement_runs(std::span<const Symbol> a, std::span<const Symbol> b,
                    std::span<std::uint32_t> out, std::uint32_t cap,
                    const Table& t = dispatch());

}  // namespace kernels
}  // namespace chaoskit
