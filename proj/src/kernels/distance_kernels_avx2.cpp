// Compiled with -mavx2 (see CMakeLists); only the dispatcher decides whether
// these entry points run, after checking CPU support at startup.
#include "opportune/kernels/distance_kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace opportune::kernels {
namespace {

void points_in_radius_avx2(double qx, double qy, const double* xs, const double* ys,
                           std::uint32_t n, double r2, std::uint8_t* out) {
  const __m256d vqx = _mm256_set1_pd(qx);
  const __m256d vqy = _mm256_set1_pd(qy);
  const __m256d vr2 = _mm256_set1_pd(r2);
  std::uint32_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vqx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vqy);
    // mul+add (not FMA) so results are bit-identical to the scalar kernel
    const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(d2, vr2, _CMP_LE_OQ));
    out[i + 0] = static_cast<std::uint8_t>(mask & 1);
    out[i + 1] = static_cast<std::uint8_t>((mask >> 1) & 1);
    out[i + 2] = static_cast<std::uint8_t>((mask >> 2) & 1);
    out[i + 3] = static_cast<std::uint8_t>((mask >> 3) & 1);
  }
  for (; i < n; ++i) {
    const double dx = xs[i] - qx;
    const double dy = ys[i] - qy;
    out[i] = (dx * dx + dy * dy <= r2) ? 1 : 0;
  }
}

void pairs_within_range_avx2(const double* xs, const double* ys, const std::uint32_t* a,
                             const std::uint32_t* b, const double* r2, std::uint32_t n,
                             std::uint8_t* out) {
  std::uint32_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m128i ia = _mm_loadu_si128(reinterpret_cast<const __m128i*>(a + i));
    const __m128i ib = _mm_loadu_si128(reinterpret_cast<const __m128i*>(b + i));
    const __m256d ax = _mm256_i32gather_pd(xs, ia, 8);
    const __m256d ay = _mm256_i32gather_pd(ys, ia, 8);
    const __m256d bx = _mm256_i32gather_pd(xs, ib, 8);
    const __m256d by = _mm256_i32gather_pd(ys, ib, 8);
    const __m256d dx = _mm256_sub_pd(ax, bx);
    const __m256d dy = _mm256_sub_pd(ay, by);
    // mul+add (not FMA) so results are bit-identical to the scalar kernel
    const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(d2, _mm256_loadu_pd(r2 + i), _CMP_LE_OQ));
    out[i + 0] = static_cast<std::uint8_t>(mask & 1);
    out[i + 1] = static_cast<std::uint8_t>((mask >> 1) & 1);
    out[i + 2] = static_cast<std::uint8_t>((mask >> 2) & 1);
    out[i + 3] = static_cast<std::uint8_t>((mask >> 3) & 1);
  }
  for (; i < n; ++i) {
    const double dx = xs[a[i]] - xs[b[i]];
    const double dy = ys[a[i]] - ys[b[i]];
    out[i] = (dx * dx + dy * dy <= r2[i]) ? 1 : 0;
  }
}

}  // namespace

const DistanceKernels* avx2_kernels() {
  static const DistanceKernels k{"avx2", points_in_radius_avx2, pairs_within_range_avx2};
  return &k;
}

}  // namespace opportune::kernels

#else

namespace opportune::kernels {
const DistanceKernels* avx2_kernels() { return nullptr; }
}  // namespace opportune::kernels

#endif
