#include "opportune/batch.hpp"

#include <atomic>
#include <thread>

#include "opportune/engine.hpp"

namespace opportune {

BatchResult run_batch(const ScenarioConfig& base, const RoadGraph& graph, const BatchSpec& spec) {
  BatchResult result;
  for (RouterKind protocol : spec.protocols) {
    for (std::uint64_t seed : spec.seeds) {
      BatchCell cell;
      cell.protocol = protocol;
      cell.seed = seed;
      result.cells.push_back(std::move(cell));
    }
  }

  std::atomic<std::size_t> cursor{0};
  const auto worker = [&]() {
    while (true) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= result.cells.size()) return;
      BatchCell& cell = result.cells[i];
      try {
        ScenarioConfig cfg = base;  // each cell owns its config; graph is shared read-only
        cfg.set_all_routers(cell.protocol);
        cfg.rng_seed = cell.seed;
        cell.report = run_simulation(cfg, graph);
        cell.ok = true;
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
    }
  };

  const unsigned jobs = std::max(1u, spec.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<RunReport> reports;
  for (const BatchCell& cell : result.cells) {
    if (cell.ok)
      reports.push_back(cell.report);
    else
      result.all_ok = false;
  }
  write_outputs(spec.out_dir, reports);
  return result;
}

}  // namespace opportune
