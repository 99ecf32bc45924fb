#include "opportune/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opportune {

namespace {
constexpr double kForever = std::numeric_limits<double>::infinity();
}

std::vector<VertexId> PathPlanner::sample_path(VertexId from, Rng& rng) {
  const std::uint32_t comp = graph_.component_of(from);
  const auto members = graph_.component_vertices(comp);
  if (members.size() <= 1) return {};
  // Uniform over the other members: draw an index and skip our own slot.
  const auto self_pos = static_cast<std::uint64_t>(
      std::lower_bound(members.begin(), members.end(), from) - members.begin());
  std::uint64_t pick = rng.uniform_index(members.size() - 1);
  if (pick >= self_pos) ++pick;
  const VertexId dest = members[pick];

  auto it = trees_.find(dest);
  if (it == trees_.end()) it = trees_.emplace(dest, graph_.shortest_path_tree(dest)).first;
  auto path = graph_.path_from_tree(it->second, from);
  return path ? std::move(path->vertices) : std::vector<VertexId>{};
}

MobilityState make_mobile_state(PathPlanner& planner, VertexId start, const SpeedRange& speed,
                                Rng& rng) {
  MobilityState st;
  st.at_vertex = start;
  st.position = planner.graph().vertex(start);
  st.path = planner.sample_path(start, rng);
  if (st.path.size() < 2) {
    st.mode = MobilityState::Mode::waiting;
    st.wait_until = kForever;  // single-vertex component: nowhere to go
    return st;
  }
  st.leg_speed = rng.uniform(speed.min_mps, speed.max_mps);
  st.next_wp = 1;
  st.mode = MobilityState::Mode::moving;
  return st;
}

MobilityState make_stationary_state(const RoadGraph& graph, const Point& configured) {
  MobilityState st;
  st.at_vertex = graph.nearest_vertex(configured);
  st.position = graph.vertex(st.at_vertex);
  st.mode = MobilityState::Mode::waiting;
  st.wait_until = kForever;
  return st;
}

void advance(MobilityState& st, double dt, double tick_start, const SpeedRange& speed,
             const WaitRange& wait, PathPlanner& planner, Rng& rng) {
  const double end = tick_start + dt;
  double now = tick_start;
  while (now < end) {
    if (st.mode == MobilityState::Mode::waiting) {
      if (st.wait_until >= end) return;  // holds position through this tick
      now = std::max(now, st.wait_until);
      st.mode = MobilityState::Mode::moving;
      continue;
    }
    const Point target = planner.graph().vertex(st.path[st.next_wp]);
    const double dist = distance(st.position, target);
    const double budget = st.leg_speed * (end - now);
    if (dist > budget) {
      const double f = budget / dist;
      st.position.x += f * (target.x - st.position.x);
      st.position.y += f * (target.y - st.position.y);
      return;
    }
    // waypoint crossed; leftover time flows into the next segment
    st.position = target;
    st.at_vertex = st.path[st.next_wp];
    now += dist / st.leg_speed;
    ++st.next_wp;
    if (st.next_wp < st.path.size()) continue;

    // Final waypoint: draw wait, then destination, then speed.
    const double pause = (wait.max_s > wait.min_s || wait.min_s > 0.0)
                             ? rng.uniform(wait.min_s, wait.max_s)
                             : 0.0;
    st.wait_until = now + pause;
    st.path = planner.sample_path(st.at_vertex, rng);
    if (st.path.size() < 2) {
      st.mode = MobilityState::Mode::waiting;
      st.wait_until = kForever;
      return;
    }
    st.next_wp = 1;
    st.leg_speed = rng.uniform(speed.min_mps, speed.max_mps);
    st.mode = MobilityState::Mode::waiting;
  }
}

}  // namespace opportune
