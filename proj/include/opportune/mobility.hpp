#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "opportune/config.hpp"
#include "opportune/rng.hpp"
#include "opportune/road_graph.hpp"

namespace opportune {

/// Movement state of one node. Stationary nodes and nodes stranded on a
/// single-vertex component are modelled as waiting forever.
struct MobilityState {
  enum class Mode { moving, waiting };

  Point position;
  Mode mode = Mode::waiting;
  std::vector<VertexId> path;   // waypoints, path[0] = leg origin
  std::uint32_t next_wp = 0;    // index of the waypoint being approached
  double leg_speed = 0.0;       // m/s, resampled per leg
  double wait_until = 0.0;      // sim seconds; +inf = parked forever
  VertexId at_vertex = 0;       // last vertex reached
};

/// Samples random-waypoint destinations and computes shortest paths to them.
/// Caches one distance tree per destination vertex; trees are shared across
/// nodes of one run (the planner is not thread-safe across runs).
class PathPlanner {
 public:
  explicit PathPlanner(const RoadGraph& graph) : graph_(graph) {}

  /// Uniform destination among the other vertices of from's component
  /// (empty when the component is a single vertex), with the shortest-path
  /// waypoints to it. Consumes exactly one draw when a choice exists.
  std::vector<VertexId> sample_path(VertexId from, Rng& rng);

  const RoadGraph& graph() const { return graph_; }

 private:
  const RoadGraph& graph_;
  std::unordered_map<VertexId, ShortestPathTree> trees_;
};

/// Mobile node start state: a fresh destination path and leg speed drawn from
/// the node's own stream (destination first, then speed).
MobilityState make_mobile_state(PathPlanner& planner, VertexId start, const SpeedRange& speed,
                                Rng& rng);

/// Stationary node: snapped to the nearest graph vertex, parked forever.
MobilityState make_stationary_state(const RoadGraph& graph, const Point& configured);

/// Advances one node across [tick_start, tick_start+dt]. Multiple waypoints
/// may be crossed in one tick; on final-waypoint arrival the node samples
/// wait, then destination, then speed, and resumes once the wait elapses.
void advance(MobilityState& state, double dt, double tick_start, const SpeedRange& speed,
             const WaitRange& wait, PathPlanner& planner, Rng& rng);

}  // namespace opportune
