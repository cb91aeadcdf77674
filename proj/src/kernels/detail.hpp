#pragma once

#include "homog/kernels/kernels.hpp"

namespace homog::kernels::detail {

extern const Table scalar;
// Defined only when the AVX2 translation unit is compiled for x86-64.
const Table* avx2() noexcept;

}  // namespace homog::kernels::detail
