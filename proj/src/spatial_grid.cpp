#include "opportune/spatial_grid.hpp"

#include <algorithm>
#include <cmath>

namespace opportune {

void SpatialGrid::build(std::span<const double> xs, std::span<const double> ys) {
  const auto n = static_cast<std::uint32_t>(xs.size());
  std::vector<std::pair<std::uint64_t, std::uint32_t>> keyed(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto cx = static_cast<std::int64_t>(std::floor(xs[i] / cell_));
    const auto cy = static_cast<std::int64_t>(std::floor(ys[i] / cell_));
    keyed[i] = {cell_key(cx, cy), i};
  }
  std::sort(keyed.begin(), keyed.end());

  order_.resize(n);
  xs_s_.resize(n);
  ys_s_.resize(n);
  runs_.clear();
  for (std::uint32_t i = 0; i < n; ++i) {
    order_[i] = keyed[i].second;
    xs_s_[i] = xs[keyed[i].second];
    ys_s_[i] = ys[keyed[i].second];
    if (i == 0 || keyed[i].first != keyed[i - 1].first)
      runs_.push_back({keyed[i].first, i, i + 1});
    else
      runs_.back().end = i + 1;
  }
}

const SpatialGrid::CellRun* SpatialGrid::find_run(std::uint64_t key) const {
  auto it = std::lower_bound(runs_.begin(), runs_.end(), key,
                             [](const CellRun& r, std::uint64_t k) { return r.key < k; });
  if (it == runs_.end() || it->key != key) return nullptr;
  return &*it;
}

void SpatialGrid::query(double qx, double qy, double r2, std::vector<std::uint32_t>& out) const {
  const auto cx = static_cast<std::int64_t>(std::floor(qx / cell_));
  const auto cy = static_cast<std::int64_t>(std::floor(qy / cell_));
  const auto& kernels = kernels::active_kernels();
  const std::size_t first = out.size();
  for (std::int64_t dx = -1; dx <= 1; ++dx) {
    for (std::int64_t dy = -1; dy <= 1; ++dy) {
      const CellRun* run = find_run(cell_key(cx + dx, cy + dy));
      if (run == nullptr) continue;
      const std::uint32_t count = run->end - run->begin;
      mask_.resize(count);
      kernels.points_in_radius(qx, qy, xs_s_.data() + run->begin, ys_s_.data() + run->begin,
                               count, r2, mask_.data());
      for (std::uint32_t i = 0; i < count; ++i) {
        if (mask_[i] != 0) out.push_back(order_[run->begin + i]);
      }
    }
  }
  std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
}

}  // namespace opportune
