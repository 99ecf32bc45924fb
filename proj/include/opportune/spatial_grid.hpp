#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "opportune/kernels/distance_kernels.hpp"

namespace opportune {

/// Uniform hash grid over 2D points for radius queries. Rebuilt from scratch
/// per build() call; query() is read-only and deterministic (results sorted
/// by point index).
class SpatialGrid {
 public:
  explicit SpatialGrid(double cell_size) : cell_(cell_size) {}

  void build(std::span<const double> xs, std::span<const double> ys);

  /// Appends indices i with distance((qx,qy), p_i)^2 <= r2, ascending.
  /// Requires sqrt(r2) <= cell size; candidates come from the 3x3 block.
  void query(double qx, double qy, double r2, std::vector<std::uint32_t>& out) const;

  double cell_size() const { return cell_; }

 private:
  struct CellRun {
    std::uint64_t key;
    std::uint32_t begin;
    std::uint32_t end;
  };
  static std::uint64_t cell_key(std::int64_t cx, std::int64_t cy) {
    // 32-bit packing keeps the key collision-free for any realistic map.
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cx)) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(cy));
  }
  const CellRun* find_run(std::uint64_t key) const;

  double cell_;
  std::vector<CellRun> runs_;           // sorted by key
  std::vector<std::uint32_t> order_;    // point indices grouped by cell
  std::vector<double> xs_s_, ys_s_;     // coordinates in order_ layout
  mutable std::vector<std::uint8_t> mask_;
};

}  // namespace opportune
