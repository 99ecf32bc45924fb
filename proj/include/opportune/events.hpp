#pragma once

#include <string>
#include <vector>

#include "opportune/config.hpp"
#include "opportune/rng.hpp"

namespace opportune {

struct TrafficEvent {
  double time;
  NodeId source;
  NodeId destination;
  std::uint64_t size;
  std::string id;
};

/// Message creation schedule: inter-event gaps uniform in the interval range
/// (the first event included), truncated strictly before end_time. Sources
/// and destinations drawn uniformly from their half-open id ranges, sizes
/// uniform integers, ids "<prefix>_<seq>" starting at 1.
std::vector<TrafficEvent> generate_events(const EventGeneratorConfig& cfg, double end_time,
                                          Rng& rng);

}  // namespace opportune
