#pragma once

#include <cstdint>

namespace opportune::kernels {

/// out[i] = 1 iff (xs[i]-qx)^2 + (ys[i]-qy)^2 <= r2. Boundary inclusive.
using PointsInRadiusFn = void (*)(double qx, double qy, const double* xs, const double* ys,
                                  std::uint32_t n, double r2, std::uint8_t* out);

/// out[i] = 1 iff squared distance between points a[i] and b[i] (indices into
/// xs/ys) is <= r2[i]. The gathered form used on cached candidate pairs.
using PairsWithinRangeFn = void (*)(const double* xs, const double* ys, const std::uint32_t* a,
                                    const std::uint32_t* b, const double* r2, std::uint32_t n,
                                    std::uint8_t* out);

struct DistanceKernels {
  const char* name;
  PointsInRadiusFn points_in_radius;
  PairsWithinRangeFn pairs_within_range;
};

/// Portable reference implementation; the ground truth the SIMD variants are
/// equivalence-tested against.
const DistanceKernels& scalar_kernels();

/// AVX2 implementation, or nullptr when unavailable (non-x86 build or CPU
/// without AVX2).
const DistanceKernels* avx2_kernels();

/// Best variant for this machine, resolved once. OPPORTUNE_SIMD=scalar|avx2
/// overrides the choice (unavailable variants fall back to scalar).
const DistanceKernels& active_kernels();

}  // namespace opportune::kernels
