#pragma once

#include "isoband/simd/kernels.hpp"

namespace isoband::simd::detail {

const KernelTable& scalar_kernels() noexcept;
#if defined(__x86_64__) || defined(_M_X64)
const KernelTable& avx2_kernels() noexcept;
#endif
#if defined(__aarch64__)
const KernelTable& neon_kernels() noexcept;
#endif

}  // namespace isoband::simd::detail
