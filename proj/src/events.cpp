#include "opportune/events.hpp"

namespace opportune {

std::vector<TrafficEvent> generate_events(const EventGeneratorConfig& cfg, double end_time,
                                          Rng& rng) {
  std::vector<TrafficEvent> out;
  std::uint64_t seq = 1;
  double t = rng.uniform(cfg.interval_min_s, cfg.interval_max_s);
  while (t < end_time) {
    TrafficEvent ev;
    ev.time = t;
    ev.source = cfg.src_lo + static_cast<NodeId>(rng.uniform_index(cfg.src_hi - cfg.src_lo));
    ev.destination = cfg.dst_lo + static_cast<NodeId>(rng.uniform_index(cfg.dst_hi - cfg.dst_lo));
    ev.size = cfg.size_min + rng.uniform_index(cfg.size_max - cfg.size_min + 1);
    ev.id = cfg.id_prefix + "_" + std::to_string(seq++);
    out.push_back(std::move(ev));
    t += rng.uniform(cfg.interval_min_s, cfg.interval_max_s);
  }
  return out;
}

}  // namespace opportune
