#include <algorithm>
#include <cstdlib>
#include <string>

#include "chaoskit/errors.hpp"
#include "impl.hpp"

namespace chaoskit::kernels {
namespace {

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(CHAOSKIT_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(CHAOSKIT_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa choose() {
  const auto avail = available();
  if (const char* env = std::getenv("CHAOSKIT_SIMD")) {
    const std::string want(env);
    for (Isa isa : avail)
      if (isa_name(isa) == want) return isa;
    return Isa::scalar;
  }
  return avail.back();
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

const Table& table(Isa isa) {
  if (!cpu_supports(isa))
    throw PreconditionViolation("kernel set not available: " + std::string(isa_name(isa)));
  switch (isa) {
#if defined(CHAOSKIT_HAVE_AVX2)
    case Isa::avx2:
      return detail::avx2_table();
#endif
#if defined(CHAOSKIT_HAVE_NEON)
    case Isa::neon:
      return detail::neon_table();
#endif
    default:
      return detail::scalar_table();
  }
}

std::vector<Isa> available() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
    if (cpu_supports(isa)) out.push_back(isa);
  return out;
}

Isa active() {
  static const Isa isa = choose();
  return isa;
}

const Table& dispatch() {
  static const Table& t = table(active());
  return t;
}

void agreement_runs(std::span<const Symbol> a, std::span<const Symbol> b,
                    std::span<std::uint32_t> out, std::uint32_t cap, const Table& t) {
  const std::size_t n = std::min({a.size(), b.size(), out.size()});
  if (n == 0) return;
  std::vector<std::uint8_t> eq(n);
  t.equal_mask(a.data(), b.data(), eq.data(), n);
  std::uint32_t run = 0;
  for (std::size_t i = n; i-- > 0;) {
    run = eq[i] ? std::min(cap, run + 1) : 0;
    out[i] = run;
  }
}

}  // namespace chaoskit::kernels
