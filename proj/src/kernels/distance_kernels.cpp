#include "opportune/kernels/distance_kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace opportune::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const DistanceKernels* resolve() {
  const char* wanted = std::getenv("OPPORTUNE_SIMD");
  if (wanted != nullptr) {
    if (std::strcmp(wanted, "scalar") == 0) return &scalar_kernels();
    if (std::strcmp(wanted, "avx2") == 0 && cpu_has_avx2() && avx2_kernels() != nullptr)
      return avx2_kernels();
    return &scalar_kernels();
  }
  if (cpu_has_avx2() && avx2_kernels() != nullptr) return avx2_kernels();
  return &scalar_kernels();
}

}  // namespace

const DistanceKernels& active_kernels() {
  static const DistanceKernels* chosen = resolve();
  return *chosen;
}

}  // namespace opportune::kernels
