#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "opportune/geometry.hpp"
#include "opportune/radio.hpp"
#include "opportune/routing.hpp"

namespace opportune {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what_, int line_ = 0)
      : std::runtime_error(line_ > 0 ? "config error at line " + std::to_string(line_) + ": " + what_
                                     : "config error: " + what_),
        line(line_) {}
  int line;
};

struct SpeedRange {
  double min_mps = 0.0;
  double max_mps = 0.0;
};

struct WaitRange {
  double min_s = 0.0;
  double max_s = 0.0;
};

enum class MovementKind { map_based, stationary };
enum class RouterKind { epidemic, prophet };

const char* router_name(RouterKind kind);
RouterKind router_from_name(const std::string& name);

struct GroupConfig {
  std::string name;  // Group1, Group2, ...
  std::uint32_t count = 0;
  MovementKind movement = MovementKind::map_based;
  SpeedRange speed;
  std::optional<WaitRange> wait;  // groups without waitTime pause 0 s
  std::uint64_t buffer_bytes = 0;
  double msg_ttl_minutes = std::numeric_limits<double>::infinity();
  std::vector<std::string> interfaces;   // names into ScenarioConfig::interfaces
  RouterKind router = RouterKind::epidemic;
  std::vector<Point> locations;          // stationary groups: exactly count entries
};

struct EventGeneratorConfig {
  double interval_min_s = 0.0, interval_max_s = 0.0;
  std::uint64_t size_min = 0, size_max = 0;   // bytes
  std::uint32_t src_lo = 0, src_hi = 0;       // half-open [lo,hi)
  std::uint32_t dst_lo = 0, dst_hi = 0;       // half-open [lo,hi)
  std::string id_prefix = "M";
};

struct ScenarioConfig {
  std::string name = "scenario";
  double end_time_s = 0.0;
  double update_interval_s = 0.0;
  std::uint64_t rng_seed = 1;
  std::string map_file;
  std::vector<InterfaceSpec> interfaces;
  std::vector<GroupConfig> groups;
  std::optional<EventGeneratorConfig> events;
  ProphetParams prophet;
  std::string report_dir = "reports";
  std::vector<std::string> warnings;  // unknown keys etc., from parsing

  std::uint32_t total_nodes() const;
  /// First node id of group g; ids are contiguous in declaration order.
  std::uint32_t first_id(std::size_t group_index) const;
  std::size_t group_of(NodeId node) const;
  const InterfaceSpec& interface_by_name(const std::string& name) const;

  /// All groups must agree on the router; mixed-router scenarios are not
  /// supported.
  RouterKind router_kind() const;
  void set_all_routers(RouterKind kind);
};

using Overrides = std::vector<std::pair<std::string, std::string>>;

/// Parses the key = value scenario format. Unknown keys produce warnings,
/// missing mandatory keys / malformed values throw ConfigError. Overrides
/// replace raw values before typed extraction, so any key can be overridden.
ScenarioConfig parse_scenario(std::string_view text, const std::string& name_hint = "scenario",
                              const Overrides& overrides = {});

ScenarioConfig load_scenario_file(const std::string& path, const Overrides& overrides = {});

/// "100k" -> 100000, "5M" -> 5000000; plain integers pass through.
std::uint64_t parse_scaled_u64(const std::string& value, int line = 0);
double parse_scaled_double(const std::string& value, int line = 0);

}  // namespace opportune
