#pragma once

#include <functional>
#include <span>

#include "opportune/buffer.hpp"
#include "opportune/config.hpp"
#include "opportune/events.hpp"
#include "opportune/mobility.hpp"
#include "opportune/report.hpp"
#include "opportune/road_graph.hpp"

namespace opportune {

/// Per-message copy accounting, kept current at every tick. For each message:
/// copies_in_buffers + dropped + dup_discarded + rejected
///   == transfers_completed + 1 (the origin copy),
/// where rejected also covers a creation the source buffer could not admit.
struct MessageLedger {
  std::uint32_t copies_in_buffers = 0;
  std::uint32_t transfers_completed = 0;
  std::uint32_t dropped = 0;        // overflow + ttl
  std::uint32_t dup_discarded = 0;  // arrivals at a node already holding the id
  std::uint32_t rejected = 0;       // larger than total capacity, never stored
  bool delivered = false;
};

/// Read-only view handed to the tick observer (tests, tracing). Spans remain
/// valid only during the callback.
struct TickView {
  std::uint64_t tick;
  double now;
  std::span<const double> xs;
  std::span<const double> ys;
  const std::vector<Buffer>& buffers;
  const MessageRegistry& registry;
  const std::vector<Link>& links;
  std::span<const Transfer> transfers;
  const std::vector<MessageLedger>& ledger;
  const RunReport& report;
};

using TickObserver = std::function<void(const TickView&)>;

/// Executes one deterministic run. Per tick, in fixed order: release traffic
/// events, advance mobility, detect contacts, step transfers, plan new
/// transfers, expire TTLs. Fully reproducible from (config, seed); the graph
/// is shared read-only across concurrent runs.
RunReport run_simulation(const ScenarioConfig& cfg, const RoadGraph& graph,
                         const TickObserver& observer = {});

}  // namespace opportune
