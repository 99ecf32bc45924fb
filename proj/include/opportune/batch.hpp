#pragma once

#include <string>
#include <vector>

#include "opportune/config.hpp"
#include "opportune/report.hpp"
#include "opportune/road_graph.hpp"

namespace opportune {

/// Protocol x seed grid over one base scenario.
struct BatchSpec {
  std::vector<RouterKind> protocols{RouterKind::epidemic, RouterKind::prophet};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  unsigned jobs = 1;
  std::string out_dir = "reports";
};

struct BatchCell {
  RouterKind protocol;
  std::uint64_t seed;
  bool ok = false;
  std::string error;
  RunReport report;
};

struct BatchResult {
  std::vector<BatchCell> cells;  // grid order: protocol-major, then seed
  bool all_ok = true;
};

/// Runs every cell (failures don't abort the rest), aggregates the successful
/// ones, and writes runs/summary/deliveries/plot CSVs to spec.out_dir.
/// Output bytes are invariant to jobs and scheduling: cells are deterministic
/// and results are assembled in grid order.
BatchResult run_batch(const ScenarioConfig& base, const RoadGraph& graph, const BatchSpec& spec);

}  // namespace opportune
