#include <cstdlib>
#include <cstring>

#include "kernels_impl.hpp"

namespace isoband::simd {

const char* isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

const KernelTable& scalar_table() noexcept { return detail::scalar_kernels(); }

const KernelTable* table_for(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return &detail::scalar_kernels();
    case Isa::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      __builtin_cpu_init();
      if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return &detail::avx2_kernels();
#endif
      return nullptr;
    case Isa::Neon:
#if defined(__aarch64__)
      return &detail::neon_kernels();
#else
      return nullptr;
#endif
  }
  return nullptr;
}

namespace {

const KernelTable& select() noexcept {
  if (const char* forced = std::getenv("ISOBAND_SIMD"); forced && std::strcmp(forced, "scalar") == 0)
    return detail::scalar_kernels();
  for (Isa isa : {Isa::Avx2, Isa::Neon})
    if (const KernelTable* t = table_for(isa)) return *t;
  return detail::scalar_kernels();
}

}  // namespace

const KernelTable& active() noexcept {
  static const KernelTable& chosen = select();
  return chosen;
}

}  // namespace isoband::simd
