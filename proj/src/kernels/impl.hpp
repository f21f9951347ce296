#pragma once

#include "chaoskit/kernels.hpp"

namespace chaoskit::kernels::detail {

const Table& scalar_table();
#if defined(CHAOSKIT_HAVE_AVX2)
const Table& avx2_table();
#endif
#if defined(CHAOSKIT_HAVE_NEON)
const Table& neon_table();
#endif

}  // namespace chaoskit::kernels::detail
