#include "opportune/road_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <unordered_map>

namespace opportune {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Snap index: quantizes to a tolerance-sized grid and probes the 3x3
// neighborhood, so points within the tolerance merge even across cell seams.
class SnapIndex {
 public:
  explicit SnapIndex(double tol) : tol_(tol) {}

  VertexId intern(const Point& p, std::vector<Point>& points) {
    const std::int64_t cx = static_cast<std::int64_t>(std::llround(p.x / tol_));
    const std::int64_t cy = static_cast<std::int64_t>(std::llround(p.y / tol_));
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = cells_.find(key(cx + dx, cy + dy));
        if (it == cells_.end()) continue;
        for (VertexId v : it->second) {
          if (distance(points[v], p) <= tol_) return v;
        }
      }
    }
    const auto v = static_cast<VertexId>(points.size());
    points.push_back(p);
    cells_[key(cx, cy)].push_back(v);
    return v;
  }

 private:
  static std::uint64_t key(std::int64_t cx, std::int64_t cy) {
    return static_cast<std::uint64_t>(cx) * 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(cy);
  }
  double tol_;
  std::unordered_map<std::uint64_t, std::vector<VertexId>> cells_;
};

}  // namespace

RoadGraph RoadGraph::build(const std::vector<Polyline>& lines, double snap_tolerance) {
  if (lines.empty()) throw MapError("map contains no polylines; a scenario cannot run without roads");

  RoadGraph g;
  SnapIndex snap(snap_tolerance);
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (const Polyline& line : lines) {
    VertexId prev = 0;
    bool have_prev = false;
    for (const Point& p : line.points) {
      const VertexId v = snap.intern(p, g.points_);
      if (have_prev && v != prev) {  // v == prev: segment collapsed by snapping
        edges.emplace_back(std::min(prev, v), std::max(prev, v));
      }
      prev = v;
      have_prev = true;
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (edges.empty()) throw MapError("map contains no usable road segments");
  g.edge_count_ = edges.size();

  const std::uint32_t n = g.vertex_count();
  std::vector<std::size_t> degree(n, 0);
  for (const auto& [u, v] : edges) {
    ++degree[u];
    ++degree[v];
  }
  g.adj_start_.assign(n + 1, 0);
  for (std::uint32_t v = 0; v < n; ++v) g.adj_start_[v + 1] = g.adj_start_[v] + degree[v];
  g.adjacency_.resize(g.adj_start_[n]);
  std::vector<std::size_t> fill(g.adj_start_.begin(), g.adj_start_.end() - 1);
  for (const auto& [u, v] : edges) {
    const double len = distance(g.points_[u], g.points_[v]);
    g.adjacency_[fill[u]++] = {v, len};
    g.adjacency_[fill[v]++] = {u, len};
  }
  for (std::uint32_t v = 0; v < n; ++v) {
    auto* b = g.adjacency_.data();
    std::sort(b + g.adj_start_[v], b + g.adj_start_[v + 1],
              [](const Edge& a, const Edge& c) { return a.to < c.to; });
  }

  // Connected components by BFS in vertex-id order.
  g.component_of_.assign(n, UINT32_MAX);
  std::vector<VertexId> queue;
  for (VertexId start = 0; start < n; ++start) {
    if (g.component_of_[start] != UINT32_MAX) continue;
    const auto comp = static_cast<std::uint32_t>(g.component_members_.size());
    g.component_members_.emplace_back();
    queue.assign(1, start);
    g.component_of_[start] = comp;
    while (!queue.empty()) {
      const VertexId u = queue.back();
      queue.pop_back();
      g.component_members_[comp].push_back(u);
      for (const Edge& e : g.neighbors(u)) {
        if (g.component_of_[e.to] == UINT32_MAX) {
          g.component_of_[e.to] = comp;
          queue.push_back(e.to);
        }
      }
    }
    std::sort(g.component_members_[comp].begin(), g.component_members_[comp].end());
  }
  g.largest_component_ = 0;
  for (std::uint32_t c = 1; c < g.component_count(); ++c) {
    if (g.component_members_[c].size() > g.component_members_[g.largest_component_].size())
      g.largest_component_ = c;
  }
  return g;
}

ShortestPathTree RoadGraph::shortest_path_tree(VertexId dst) const {
  ShortestPathTree tree;
  tree.destination = dst;
  tree.dist.assign(vertex_count(), kInf);
  tree.dist[dst] = 0.0;
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.emplace(0.0, dst);
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d > tree.dist[u]) continue;
    for (const Edge& e : neighbors(u)) {
      const double nd = d + e.length;
      if (nd < tree.dist[e.to]) {
        tree.dist[e.to] = nd;
        pq.emplace(nd, e.to);
      }
    }
  }
  return tree;
}

std::optional<PathResult> RoadGraph::path_from_tree(const ShortestPathTree& tree,
                                                    VertexId src) const {
  if (tree.dist[src] == kInf) return std::nullopt;
  PathResult result;
  result.length = tree.dist[src];
  result.vertices.push_back(src);
  // Walk downhill in distance-to-destination. Among neighbors that keep the
  // path shortest, the smallest id wins, which yields the lexicographically
  // smallest vertex sequence over all minimum-length paths.
  VertexId u = src;
  while (u != tree.destination) {
    VertexId next = UINT32_MAX;
    for (const Edge& e : neighbors(u)) {  // neighbors sorted by id
      if (tree.dist[e.to] + e.length == tree.dist[u]) {
        next = e.to;
        break;
      }
    }
    if (next == UINT32_MAX) {
      // Float round-off broke the exact decomposition; fall back to the
      // neighbor minimizing the residual. Not observed in practice.
      double best = kInf;
      for (const Edge& e : neighbors(u)) {
        const double r = tree.dist[e.to] + e.length;
        if (r < best) {
          best = r;
          next = e.to;
        }
      }
    }
    u = next;
    result.vertices.push_back(u);
  }
  return result;
}

std::optional<PathResult> RoadGraph::shortest_path(VertexId src, VertexId dst) const {
  if (component_of_[src] != component_of_[dst]) return std::nullopt;
  if (src == dst) return PathResult{{src}, 0.0};
  return path_from_tree(shortest_path_tree(dst), src);
}

VertexId RoadGraph::nearest_vertex(const Point& p) const {
  if (points_.empty()) throw MapError("nearest_vertex on empty graph");
  VertexId best = 0;
  double best_d2 = squared_distance(points_[0], p);
  for (VertexId v = 1; v < vertex_count(); ++v) {
    const double d2 = squared_distance(points_[v], p);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = v;
    }
  }
  return best;
}

}  // namespace opportune
