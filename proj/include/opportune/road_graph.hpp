#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "opportune/geometry.hpp"
#include "opportune/wkt.hpp"

namespace opportune {

using VertexId = std::uint32_t;

struct MapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PathResult {
  std::vector<VertexId> vertices;  // [src, ..., dst]
  double length = 0.0;
};

/// Distances of every vertex to one fixed destination; reusable for path
/// extraction from any source (the graph is undirected).
struct ShortestPathTree {
  VertexId destination = 0;
  std::vector<double> dist;  // +inf where unreachable
};

/// Weighted undirected road graph built from WKT polylines.
///
/// Construction merges endpoints coincident within a snap tolerance,
/// deduplicates edges, drops zero-length segments, and labels connected
/// components. Immutable afterwards; safe for shared concurrent reads.
class RoadGraph {
 public:
  struct Edge {
    VertexId to;
    double length;
  };

  /// Throws MapError when the input yields no usable edge.
  static RoadGraph build(const std::vector<Polyline>& lines, double snap_tolerance = 1e-6);

  std::uint32_t vertex_count() const { return static_cast<std::uint32_t>(points_.size()); }
  std::uint64_t edge_count() const { return edge_count_; }
  const Point& vertex(VertexId v) const { return points_[v]; }
  std::span<const Point> vertices() const { return points_; }

  std::span<const Edge> neighbors(VertexId v) const {
    return {adjacency_.data() + adj_start_[v], adj_start_[v + 1] - adj_start_[v]};
  }

  std::uint32_t component_count() const { return static_cast<std::uint32_t>(component_members_.size()); }
  std::uint32_t component_of(VertexId v) const { return component_of_[v]; }
  std::span<const VertexId> component_vertices(std::uint32_t comp) const {
    return component_members_[comp];
  }
  /// Component with the most vertices; ties resolved by lowest component id.
  std::uint32_t largest_component() const { return largest_component_; }

  /// Dijkstra from dst. Deterministic: relies only on final distances.
  ShortestPathTree shortest_path_tree(VertexId dst) const;

  /// Minimum-length path; among equal-length paths, the lexicographically
  /// smallest vertex-id sequence. Returns nullopt when src and dst live in
  /// different components.
  std::optional<PathResult> shortest_path(VertexId src, VertexId dst) const;

  /// Path extraction against a precomputed tree (same tie rule).
  std::optional<PathResult> path_from_tree(const ShortestPathTree& tree, VertexId src) const;

  /// Vertex minimizing Euclidean distance to p; ties take the smallest id.
  VertexId nearest_vertex(const Point& p) const;

 private:
  std::vector<Point> points_;
  std::vector<std::size_t> adj_start_;  // CSR offsets, size vertex_count()+1
  std::vector<Edge> adjacency_;         // neighbor lists sorted by vertex id
  std::uint64_t edge_count_ = 0;
  std::vector<std::uint32_t> component_of_;
  std::vector<std::vector<VertexId>> component_members_;
  std::uint32_t largest_component_ = 0;
};

}  // namespace opportune
