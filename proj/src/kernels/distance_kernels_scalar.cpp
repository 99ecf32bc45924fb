#include "opportune/kernels/distance_kernels.hpp"

namespace opportune::kernels {
namespace {

void points_in_radius_scalar(double qx, double qy, const double* xs, const double* ys,
                             std::uint32_t n, double r2, std::uint8_t* out) {
  for (std::uint32_t i = 0; i < n; ++i) {
    const double dx = xs[i] - qx;
    const double dy = ys[i] - qy;
    out[i] = (dx * dx + dy * dy <= r2) ? 1 : 0;
  }
}

void pairs_within_range_scalar(const double* xs, const double* ys, const std::uint32_t* a,
                               const std::uint32_t* b, const double* r2, std::uint32_t n,
                               std::uint8_t* out) {
  for (std::uint32_t i = 0; i < n; ++i) {
    const double dx = xs[a[i]] - xs[b[i]];
    const double dy = ys[a[i]] - ys[b[i]];
    out[i] = (dx * dx + dy * dy <= r2[i]) ? 1 : 0;
  }
}

}  // namespace

const DistanceKernels& scalar_kernels() {
  static const DistanceKernels k{"scalar", points_in_radius_scalar, pairs_within_range_scalar};
  return k;
}

}  // namespace opportune::kernels
