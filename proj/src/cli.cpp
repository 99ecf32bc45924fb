#include "opportune/cli.hpp"

#include <cmath>
#include <cstdio>

#include "opportune/batch.hpp"
#include "opportune/engine.hpp"
#include "opportune/log.hpp"
#include "opportune/report.hpp"
#include "opportune/wkt.hpp"

namespace opportune::cli {

namespace {

Overrides to_overrides(const std::vector<std::string>& flags) {
  Overrides out;
  for (const std::string& f : flags) {
    const std::size_t eq = f.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("--set expects key=value, got '" + f + "'");
    out.emplace_back(f.substr(0, eq), f.substr(eq + 1));
  }
  return out;
}

struct LoadedScenario {
  ScenarioConfig cfg;
  RoadGraph graph;
};

LoadedScenario load(const std::string& path, const std::vector<std::string>& set_flags) {
  ScenarioConfig cfg = load_scenario_file(path, to_overrides(set_flags));
  for (const std::string& w : cfg.warnings) OPPORTUNE_LOG_WARN("%s", w.c_str());
  RoadGraph graph = RoadGraph::build(load_wkt_file(cfg.map_file));
  if (graph.component_count() > 1) {
    OPPORTUNE_LOG_WARN(
        "map has %u connected components (largest: %zu of %u vertices); "
        "mobile nodes are confined to the largest",
        graph.component_count(), graph.component_vertices(graph.largest_component()).size(),
        graph.vertex_count());
  }
  return {std::move(cfg), std::move(graph)};
}

const char* fmt_opt(const std::optional<double>& v, char* buf, std::size_t n) {
  if (!v) return "-";
  std::snprintf(buf, n, "%.4f", *v);
  return buf;
}

void print_metrics_line(const RunMetrics& m) {
  char b1[32], b2[32], b3[32], b4[32];
  std::printf("%-9s seed=%llu created=%llu delivered=%llu delivery_prob=%s avg_delay=%s "
              "overhead=%s avg_hops=%s dropped=%llu (overflow=%llu ttl=%llu) aborted=%llu\n",
              m.protocol.c_str(), static_cast<unsigned long long>(m.seed),
              static_cast<unsigned long long>(m.created),
              static_cast<unsigned long long>(m.delivered), fmt_opt(m.delivery_prob, b1, 32),
              fmt_opt(m.avg_delay, b2, 32), fmt_opt(m.overhead, b3, 32),
              fmt_opt(m.avg_hops, b4, 32),
              static_cast<unsigned long long>(m.dropped_overflow + m.dropped_ttl),
              static_cast<unsigned long long>(m.dropped_overflow),
              static_cast<unsigned long long>(m.dropped_ttl),
              static_cast<unsigned long long>(m.aborted));
}

}  // namespace

Overrides parse_overrides(const std::vector<std::string>& kv_flags) {
  return to_overrides(kv_flags);
}

int cmd_run(const RunArgs& args) {
  LoadedScenario s = load(args.scenario_path, args.set_flags);
  const std::string out_dir = args.out_dir.empty() ? s.cfg.report_dir : args.out_dir;
  OPPORTUNE_LOG_INFO("running '%s' (router=%s, seed=%llu)", s.cfg.name.c_str(),
                     router_name(s.cfg.router_kind()),
                     static_cast<unsigned long long>(s.cfg.rng_seed));
  const RunReport report = run_simulation(s.cfg, s.graph);
  write_outputs(out_dir, {&report, 1});
  print_metrics_line(compute_metrics(report));
  std::printf("reports written to %s\n", out_dir.c_str());
  return 0;
}

int cmd_batch(const BatchArgs& args) {
  LoadedScenario s = load(args.scenario_path, args.set_flags);
  BatchSpec spec;
  spec.protocols.clear();
  for (const std::string& p : args.protocols) spec.protocols.push_back(router_from_name(p));
  if (spec.protocols.empty() || args.seeds.empty())
    throw ConfigError("batch needs at least one protocol and one seed");
  spec.seeds = args.seeds;
  spec.jobs = args.jobs == 0 ? 1 : args.jobs;
  spec.out_dir = args.out_dir.empty() ? s.cfg.report_dir : args.out_dir;

  const BatchResult result = run_batch(s.cfg, s.graph, spec);
  std::vector<RunMetrics> metrics;
  for (const BatchCell& cell : result.cells) {
    if (cell.ok) {
      metrics.push_back(compute_metrics(cell.report));
      print_metrics_line(metrics.back());
    } else {
      std::fprintf(stderr, "FAILED %-9s seed=%llu: %s\n", router_name(cell.protocol),
                   static_cast<unsigned long long>(cell.seed), cell.error.c_str());
    }
  }
  for (const ProtocolSummary& ps : aggregate(metrics)) {
    std::printf("%-9s over %u runs: delivery_prob %.5f (sd %.5f)", ps.protocol.c_str(), ps.runs,
                ps.delivery_prob.mean, ps.delivery_prob.sd);
    if (ps.avg_delay.runs > 0)
      std::printf(", avg_delay %.2f s (sd %.2f)", ps.avg_delay.mean, ps.avg_delay.sd);
    std::printf(", dropped %.1f\n", ps.dropped.mean);
  }
  std::printf("reports written to %s\n", spec.out_dir.c_str());
  return result.all_ok ? 0 : 1;
}

int cmd_validate(const ValidateArgs& args) {
  LoadedScenario s = load(args.scenario_path, args.set_flags);
  const ScenarioConfig& cfg = s.cfg;
  const RoadGraph& g = s.graph;
  int errors = 0;

  std::printf("scenario '%s': endTime=%g s, tick=%g s, seed=%llu\n", cfg.name.c_str(),
              cfg.end_time_s, cfg.update_interval_s,
              static_cast<unsigned long long>(cfg.rng_seed));
  std::printf("map %s: %u vertices, %llu edges, %u components (largest has %zu vertices)\n",
              cfg.map_file.c_str(), g.vertex_count(),
              static_cast<unsigned long long>(g.edge_count()), g.component_count(),
              g.component_vertices(g.largest_component()).size());

  std::printf("node id layout:\n");
  for (std::size_t gi = 0; gi < cfg.groups.size(); ++gi) {
    const GroupConfig& grp = cfg.groups[gi];
    const std::uint32_t first = cfg.first_id(gi);
    std::printf("  %-8s ids %u..%u  %-18s buffer=%llu B router=%s\n", grp.name.c_str(), first,
                first + grp.count - 1,
                grp.movement == MovementKind::stationary ? "StationaryMovement"
                                                         : "MapBasedMovement",
                static_cast<unsigned long long>(grp.buffer_bytes), router_name(grp.router));
    if (grp.movement == MovementKind::stationary) {
      for (std::uint32_t i = 0; i < grp.count; ++i) {
        const Point& p = grp.locations[i];
        const VertexId v = g.nearest_vertex(p);
        const double d = distance(p, g.vertex(v));
        if (d > 100.0)
          std::printf("  warning: node %u location (%g, %g) snaps %.1f m away (vertex %u)\n",
                      first + i, p.x, p.y, d, v);
      }
    }
  }

  if (cfg.events) {
    const EventGeneratorConfig& ev = *cfg.events;
    std::printf("traffic: sources [%u,%u), destinations [%u,%u), interval %g-%g s, size %llu-%llu B\n",
                ev.src_lo, ev.src_hi, ev.dst_lo, ev.dst_hi, ev.interval_min_s, ev.interval_max_s,
                static_cast<unsigned long long>(ev.size_min),
                static_cast<unsigned long long>(ev.size_max));
    for (std::uint32_t id : {ev.src_lo, ev.src_hi - 1}) {
      if (cfg.groups[cfg.group_of(id)].movement == MovementKind::stationary)
        std::printf("  note: source id %u belongs to a stationary group\n", id);
    }
  } else {
    std::printf("traffic: none configured\n");
  }

  if (errors == 0) std::printf("validation OK\n");
  return errors == 0 ? 0 : 1;
}

}  // namespace opportune::cli
