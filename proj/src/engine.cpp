#include "opportune/engine.hpp"

#include <algorithm>
#include <cmath>

#include "opportune/routing.hpp"

namespace opportune {

namespace {

struct NodeSetup {
  std::size_t group;
  bool mobile;
};

}  // namespace

RunReport run_simulation(const ScenarioConfig& cfg, const RoadGraph& graph,
                         const TickObserver& observer) {
  const RouterKind router = cfg.router_kind();
  const std::uint32_t n_nodes = cfg.total_nodes();
  const double dt = cfg.update_interval_s;
  const double end_time = cfg.end_time_s;

  RunReport report;
  report.protocol = router_name(router);
  report.seed = cfg.rng_seed;

  // Interfaces.
  InterfaceTable ifaces;
  for (const InterfaceSpec& spec : cfg.interfaces) ifaces.add_kind(spec);
  ifaces.set_node_count(n_nodes);
  const auto kind_of = [&](const std::string& name) -> KindId {
    for (KindId k = 0; k < cfg.interfaces.size(); ++k)
      if (cfg.interfaces[k].name == name) return k;
    throw ConfigError("interface '" + name + "' is not defined");
  };

  // Node table, id-contiguous per group in declaration order.
  std::vector<NodeSetup> nodes;
  nodes.reserve(n_nodes);
  double max_speed = 0.0;
  for (std::size_t gi = 0; gi < cfg.groups.size(); ++gi) {
    const GroupConfig& g = cfg.groups[gi];
    const bool mobile = g.movement == MovementKind::map_based;
    if (mobile) max_speed = std::max(max_speed, g.speed.max_mps);
    for (std::uint32_t i = 0; i < g.count; ++i) {
      const auto id = static_cast<NodeId>(nodes.size());
      nodes.push_back({gi, mobile});
      for (const std::string& iface : g.interfaces) ifaces.assign(id, kind_of(iface));
    }
  }

  // RNG substreams: placement (shared, drawn in id order), events (shared),
  // mobility (one stream per node, draw counts independent across nodes).
  RngStreams streams(cfg.rng_seed);
  Rng placement_rng = streams.stream("placement");
  Rng events_rng = streams.stream("events");
  std::vector<Rng> node_rngs(n_nodes);
  for (NodeId id = 0; id < n_nodes; ++id)
    if (nodes[id].mobile) node_rngs[id] = streams.node_stream("mobility", id);

  // Placement. Mobile nodes start on the largest component (movement is
  // confined per component; stray map fragments would strand them).
  PathPlanner planner(graph);
  const auto main_comp = graph.component_vertices(graph.largest_component());
  std::vector<MobilityState> mobility(n_nodes);
  std::vector<double> xs(n_nodes), ys(n_nodes);
  for (NodeId id = 0; id < n_nodes; ++id) {
    const GroupConfig& g = cfg.groups[nodes[id].group];
    if (nodes[id].mobile) {
      const VertexId start = main_comp[placement_rng.uniform_index(main_comp.size())];
      mobility[id] = make_mobile_state(planner, start, g.speed, node_rngs[id]);
    } else {
      const std::uint32_t offset = id - cfg.first_id(nodes[id].group);
      mobility[id] = make_stationary_state(graph, g.locations[offset]);
    }
    xs[id] = mobility[id].position.x;
    ys[id] = mobility[id].position.y;
  }

  // Traffic schedule (chronological by construction).
  std::vector<TrafficEvent> schedule;
  if (cfg.events) schedule = generate_events(*cfg.events, end_time, events_rng);
  std::size_t next_event = 0;

  MessageRegistry registry;
  std::vector<MessageLedger> ledger;
  std::vector<Buffer> buffers;
  buffers.reserve(n_nodes);
  for (NodeId id = 0; id < n_nodes; ++id)
    buffers.emplace_back(cfg.groups[nodes[id].group].buffer_bytes);

  const auto protocol = make_protocol(router_name(router), n_nodes, cfg.prophet);
  TransferBoard board;
  board.reset(n_nodes, ifaces.kind_count());
  ContactTracker tracker(ifaces, dt, max_speed);
  std::vector<std::uint64_t> link_keys, prev_link_keys;

  const auto count_drops = [&](const std::vector<MsgIdx>& dropped, std::uint64_t& counter) {
    for (MsgIdx m : dropped) {
      ++counter;
      ++ledger[m].dropped;
      --ledger[m].copies_in_buffers;
    }
  };

  // Accepts a copy at `node`, with all drop/duplicate/reject bookkeeping.
  const auto ingest = [&](NodeId node, const MessageCopy& copy, double now) {
    if (buffers[node].has(copy.msg)) {
      ++ledger[copy.msg].dup_discarded;
      return;
    }
    InsertResult res = buffers[node].insert(copy, registry, now);
    count_drops(res.dropped, report.n_dropped_overflow);
    if (res.accepted)
      ++ledger[copy.msg].copies_in_buffers;
    else
      ++ledger[copy.msg].rejected;
  };

  const auto on_complete = [&](const Transfer& t) {
    ++report.n_relayed;
    ++ledger[t.msg].transfers_completed;
    const Message& m = registry.at(t.msg);
    if (t.receiver == m.destination && !ledger[t.msg].delivered) {
      ledger[t.msg].delivered = true;
      ++report.n_delivered;
      report.deliveries.push_back(
          {m.id, m.source, m.destination, m.created_at, t.completes_at, t.hop_at_receiver});
    } else if (t.receiver == m.destination) {
      // Later copies reaching the destination are discarded on arrival.
      ++ledger[t.msg].dup_discarded;
      return;
    }
    ingest(t.receiver, {t.msg, t.completes_at, t.hop_at_receiver}, t.completes_at);
  };

  const auto on_abort = [&](const Transfer&) { ++report.n_aborted; };

  const auto n_ticks = static_cast<std::uint64_t>(std::ceil(end_time / dt - 1e-9));
  for (std::uint64_t tick = 0; tick < n_ticks; ++tick) {
    const double tick_start = static_cast<double>(tick) * dt;
    const double now = std::min(static_cast<double>(tick + 1) * dt, end_time);

    // 1. traffic events falling inside this tick
    while (next_event < schedule.size() && schedule[next_event].time <= now) {
      const TrafficEvent& ev = schedule[next_event++];
      const double ttl = cfg.groups[cfg.group_of(ev.source)].msg_ttl_minutes;
      const MsgIdx idx = registry.add({ev.id, ev.source, ev.destination, ev.size, ev.time, ttl});
      ledger.emplace_back();
      ++report.n_created;
      ingest(ev.source, {idx, ev.time, 0}, ev.time);
    }

    // 2. mobility
    for (NodeId id = 0; id < n_nodes; ++id) {
      MobilityState& st = mobility[id];
      if (!nodes[id].mobile) continue;
      const GroupConfig& g = cfg.groups[nodes[id].group];
      const WaitRange wait = g.wait.value_or(WaitRange{0.0, 0.0});
      advance(st, now - tick_start, tick_start, g.speed, wait, planner, node_rngs[id]);
      xs[id] = st.position.x;
      ys[id] = st.position.y;
    }

    // 3. contacts; encounter hooks fire once per newly established link
    const std::vector<Link>& links = tracker.update(tick, xs, ys);
    link_keys.clear();
    for (const Link& l : links) link_keys.push_back(l.key());
    for (const Link& l : links) {
      if (!std::binary_search(prev_link_keys.begin(), prev_link_keys.end(), l.key()))
        protocol->on_link_up(l.a, l.b, now);
    }
    prev_link_keys = link_keys;

    // 4. settle in-flight transfers
    board.step(now, link_keys, on_complete, on_abort);

    // 5. new transfers: first free direction wins, lower node id first
    for (const Link& l : links) {
      if (board.busy(l.a, l.kind) || board.busy(l.b, l.kind)) continue;
      if (buffers[l.a].copies().empty() && buffers[l.b].copies().empty()) continue;
      NodeId sender = l.a, receiver = l.b;
      std::vector<MsgIdx> plan = protocol->plan(sender, receiver, now, buffers, registry);
      if (plan.empty()) {
        sender = l.b;
        receiver = l.a;
        plan = protocol->plan(sender, receiver, now, buffers, registry);
      }
      if (plan.empty()) continue;
      const MsgIdx m = plan.front();
      const MessageCopy* copy = buffers[sender].find(m);
      const double speed = ifaces.speed(sender, l.kind);
      board.start({m, sender, receiver, l.kind, now, now + transfer_time(registry.at(m).size, speed),
                   copy->hop_count + 1, l.key()});
    }

    // 6. TTL sweep
    for (NodeId id = 0; id < n_nodes; ++id)
      count_drops(buffers[id].expire(registry, now), report.n_dropped_ttl);

    if (observer) {
      observer(TickView{tick, now, xs, ys, buffers, registry, links, board.active(), ledger,
                        report});
    }
  }

  return report;
}

}  // namespace opportune
