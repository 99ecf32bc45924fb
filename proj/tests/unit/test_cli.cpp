#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "opportune/batch.hpp"
#include "opportune/cli.hpp"
#include "opportune/wkt.hpp"

using namespace opportune;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "opportune_cli_test") {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kScenario = R"(
Scenario.name = cli_fixture
Scenario.endTime = 120
Scenario.updateInterval = 0.1
MapBasedMovement.mapFile1 = grid.wkt
btInterface.type = SimpleBroadcastInterface
btInterface.transmitSpeed = 250k
btInterface.transmitRange = 30
Group1.nrofHosts = 20
Group1.movementModel = MapBasedMovement
Group1.speed = 1,10
Group1.waitTime = 0,5
Group1.bufferSize = 2M
Group1.msgTtl = 30
Group1.router = EpidemicRouter
Group1.nrofInterfaces = 1
Group1.interface1 = btInterface
Group2.nrofHosts = 1
Group2.movementModel = StationaryMovement
Group2.bufferSize = 10M
Group2.router = EpidemicRouter
Group2.nrofInterfaces = 1
Group2.interface1 = btInterface
Group2.nodeLocation = 120, 120
Events.nrof = 1
Events1.class = MessageEventGenerator
Events1.interval = 5,10
Events1.size = 50k,100k
Events1.hosts = 0,20
Events1.tohosts = 20,21
Events1.prefix = 5
)";

std::string grid_wkt() {
  std::string wkt;
  for (int r = 0; r < 5; ++r) {
    for (int c = 0; c < 5; ++c) {
      const double x = c * 60.0, y = r * 60.0;
      if (c + 1 < 5)
        wkt += "LINESTRING (" + std::to_string(x) + " " + std::to_string(y) + ", " +
               std::to_string(x + 60.0) + " " + std::to_string(y) + ")\n";
      if (r + 1 < 5)
        wkt += "LINESTRING (" + std::to_string(x) + " " + std::to_string(y) + ", " +
               std::to_string(x) + " " + std::to_string(y + 60.0) + ")\n";
    }
  }
  return wkt;
}

}  // namespace

TEST_CASE("cmd_run writes report files and honors --set") {
  TempDir tmp;
  write_file(tmp.path / "s.scen", kScenario);
  write_file(tmp.path / "grid.wkt", grid_wkt());

  cli::RunArgs args;
  args.scenario_path = (tmp.path / "s.scen").string();
  args.out_dir = (tmp.path / "out").string();
  args.set_flags = {"MovementModel.rngSeed=3"};
  CHECK(cli::cmd_run(args) == 0);
  CHECK(fs::exists(tmp.path / "out" / "runs.csv"));
  CHECK(fs::exists(tmp.path / "out" / "deliveries.csv"));
  const std::string runs = slurp(tmp.path / "out" / "runs.csv");
  CHECK(runs.find("epidemic,3,") != std::string::npos);  // seed override took
}

TEST_CASE("cmd_run with a missing map file fails with a diagnostic") {
  TempDir tmp;
  write_file(tmp.path / "s.scen", kScenario);  // grid.wkt absent
  cli::RunArgs args;
  args.scenario_path = (tmp.path / "s.scen").string();
  CHECK_THROWS(cli::cmd_run(args));
}

TEST_CASE("batch output is invariant to worker count") {
  TempDir tmp;
  write_file(tmp.path / "s.scen", kScenario);
  write_file(tmp.path / "grid.wkt", grid_wkt());

  const ScenarioConfig cfg = load_scenario_file((tmp.path / "s.scen").string());
  const RoadGraph graph = RoadGraph::build(load_wkt_file(cfg.map_file));

  BatchSpec spec1;
  spec1.protocols = {RouterKind::epidemic, RouterKind::prophet};
  spec1.seeds = {1, 2};
  spec1.jobs = 1;
  spec1.out_dir = (tmp.path / "out1").string();
  BatchSpec spec4 = spec1;
  spec4.jobs = 4;
  spec4.out_dir = (tmp.path / "out4").string();

  const BatchResult r1 = run_batch(cfg, graph, spec1);
  const BatchResult r4 = run_batch(cfg, graph, spec4);
  CHECK(r1.all_ok);
  CHECK(r4.all_ok);
  for (const char* f : {"runs.csv", "summary.csv", "deliveries.csv", "plot_delivery_prob.csv"}) {
    CHECK(slurp(tmp.path / "out1" / f) == slurp(tmp.path / "out4" / f));
  }
  // grid shape: 2 protocols x 2 seeds in protocol-major order
  REQUIRE(r1.cells.size() == 4);
  CHECK(r1.cells[0].protocol == RouterKind::epidemic);
  CHECK(r1.cells[3].protocol == RouterKind::prophet);
  CHECK(r1.cells[0].seed == 1);
  CHECK(r1.cells[1].seed == 2);
}

TEST_CASE("cmd_validate passes on a consistent scenario") {
  TempDir tmp;
  write_file(tmp.path / "s.scen", kScenario);
  write_file(tmp.path / "grid.wkt", grid_wkt());
  cli::ValidateArgs args;
  args.scenario_path = (tmp.path / "s.scen").string();
  CHECK(cli::cmd_validate(args) == 0);
}

TEST_CASE("cmd_validate rejects overlapping event host ranges") {
  TempDir tmp;
  write_file(tmp.path / "s.scen", kScenario);
  write_file(tmp.path / "grid.wkt", grid_wkt());
  cli::ValidateArgs args;
  args.scenario_path = (tmp.path / "s.scen").string();
  args.set_flags = {"Events1.tohosts=19,21"};
  CHECK_THROWS_AS(cli::cmd_validate(args), ConfigError);
}

TEST_CASE("override parsing rejects malformed flags") {
  CHECK_THROWS_AS(cli::parse_overrides({"noequals"}), ConfigError);
  CHECK_THROWS_AS(cli::parse_overrides({"=value"}), ConfigError);
  const Overrides ov = cli::parse_overrides({"a.b=c,d"});
  REQUIRE(ov.size() == 1);
  CHECK(ov[0].first == "a.b");
  CHECK(ov[0].second == "c,d");
}
