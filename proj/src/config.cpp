#include "opportune/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace opportune {
namespace {

struct RawEntry {
  std::string key;
  std::string value;
  int line;
  mutable bool consumed = false;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

class RawConfig {
 public:
  static RawConfig parse(std::string_view text) {
    RawConfig raw;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t eol = text.find('\n', pos);
      std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                             : eol - pos);
      ++line_no;
      pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
      const std::size_t hash = line.find('#');
      if (hash != std::string_view::npos) line = line.substr(0, hash);
      const std::string stripped = trim(line);
      if (stripped.empty()) continue;
      const std::size_t eq = stripped.find('=');
      if (eq == std::string::npos)
        throw ConfigError("expected 'key = value', got '" + stripped + "'", line_no);
      std::string key = trim(std::string_view(stripped).substr(0, eq));
      std::string value = trim(std::string_view(stripped).substr(eq + 1));
      if (key.empty()) throw ConfigError("empty key", line_no);
      raw.entries_.push_back({std::move(key), std::move(value), line_no});
    }
    return raw;
  }

  void override_value(const std::string& key, const std::string& value) {
    entries_.erase(std::remove_if(entries_.begin(), entries_.end(),
                                  [&](const RawEntry& e) { return e.key == key; }),
                   entries_.end());
    entries_.push_back({key, value, 0});
  }

  // Last occurrence wins, like the reference key=value dialect.
  const RawEntry* find(const std::string& key) const {
    const RawEntry* found = nullptr;
    for (const auto& e : entries_) {
      if (e.key == key) {
        e.consumed = true;
        found = &e;
      }
    }
    return found;
  }

  std::vector<const RawEntry*> find_all(const std::string& key) const {
    std::vector<const RawEntry*> out;
    for (const auto& e : entries_) {
      if (e.key == key) {
        e.consumed = true;
        out.push_back(&e);
      }
    }
    return out;
  }

  bool has_prefix(const std::string& prefix) const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const RawEntry& e) { return e.key.rfind(prefix, 0) == 0; });
  }

  std::vector<const RawEntry*> unconsumed() const {
    std::vector<const RawEntry*> out;
    for (const auto& e : entries_)
      if (!e.consumed) out.push_back(&e);
    return out;
  }

  std::vector<std::string> keys_with_suffix(const std::string& suffix) const {
    std::vector<std::string> out;
    for (const auto& e : entries_) {
      if (e.key.size() > suffix.size() &&
          e.key.compare(e.key.size() - suffix.size(), suffix.size(), suffix) == 0)
        out.push_back(e.key.substr(0, e.key.size() - suffix.size()));
    }
    return out;
  }

 private:
  std::vector<RawEntry> entries_;
};

double to_double(const std::string& s, int line) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e || !std::isfinite(v))
    throw ConfigError("malformed number '" + s + "'", line);
  return v;
}

std::pair<double, double> to_range(const std::string& s, int line, bool scaled = false) {
  const std::size_t comma = s.find(',');
  if (comma == std::string::npos)
    throw ConfigError("expected 'min,max' pair, got '" + s + "'", line);
  const std::string lo = trim(std::string_view(s).substr(0, comma));
  const std::string hi = trim(std::string_view(s).substr(comma + 1));
  if (scaled) return {parse_scaled_double(lo, line), parse_scaled_double(hi, line)};
  return {to_double(lo, line), to_double(hi, line)};
}

// Required/optional typed getters.
const RawEntry& require(const RawConfig& raw, const std::string& key) {
  const RawEntry* e = raw.find(key);
  if (e == nullptr) throw ConfigError("missing mandatory key '" + key + "'");
  return *e;
}

double require_double(const RawConfig& raw, const std::string& key) {
  const RawEntry& e = require(raw, key);
  return parse_scaled_double(e.value, e.line);
}

std::uint64_t require_u64(const RawConfig& raw, const std::string& key) {
  const RawEntry& e = require(raw, key);
  return parse_scaled_u64(e.value, e.line);
}

}  // namespace

double parse_scaled_double(const std::string& value, int line) {
  if (value.empty()) throw ConfigError("empty numeric value", line);
  double scale = 1.0;
  std::string body = value;
  const char last = value.back();
  if (last == 'k' || last == 'K') {
    scale = 1e3;
    body = trim(std::string_view(value).substr(0, value.size() - 1));
  } else if (last == 'M') {
    scale = 1e6;
    body = trim(std::string_view(value).substr(0, value.size() - 1));
  }
  return to_double(body, line) * scale;
}

std::uint64_t parse_scaled_u64(const std::string& value, int line) {
  const double v = parse_scaled_double(value, line);
  if (v < 0 || v != std::floor(v) || v > 1.8e19)
    throw ConfigError("expected a non-negative integer, got '" + value + "'", line);
  return static_cast<std::uint64_t>(v);
}

const char* router_name(RouterKind kind) {
  return kind == RouterKind::epidemic ? "epidemic" : "prophet";
}

RouterKind router_from_name(const std::string& name) {
  if (name == "EpidemicRouter" || name == "epidemic") return RouterKind::epidemic;
  if (name == "ProphetRouter" || name == "prophet") return RouterKind::prophet;
  throw ConfigError("unknown router '" + name + "'");
}

std::uint32_t ScenarioConfig::total_nodes() const {
  std::uint32_t n = 0;
  for (const auto& g : groups) n += g.count;
  return n;
}

std::uint32_t ScenarioConfig::first_id(std::size_t group_index) const {
  std::uint32_t id = 0;
  for (std::size_t i = 0; i < group_index; ++i) id += groups[i].count;
  return id;
}

std::size_t ScenarioConfig::group_of(NodeId node) const {
  std::uint32_t base = 0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    base += groups[i].count;
    if (node < base) return i;
  }
  throw std::out_of_range("node id out of range");
}

const InterfaceSpec& ScenarioConfig::interface_by_name(const std::string& name) const {
  for (const auto& spec : interfaces)
    if (spec.name == name) return spec;
  throw ConfigError("interface '" + name + "' is not defined");
}

RouterKind ScenarioConfig::router_kind() const {
  const RouterKind kind = groups.at(0).router;
  for (const auto& g : groups) {
    if (g.router != kind) throw ConfigError("mixed per-group routers are not supported");
  }
  return kind;
}

void ScenarioConfig::set_all_routers(RouterKind kind) {
  for (auto& g : groups) g.router = kind;
}

ScenarioConfig parse_scenario(std::string_view text, const std::string& name_hint,
                              const Overrides& overrides) {
  RawConfig raw = RawConfig::parse(text);
  for (const auto& [k, v] : overrides) raw.override_value(k, v);

  ScenarioConfig cfg;
  cfg.name = name_hint;
  if (const RawEntry* e = raw.find("Scenario.name")) cfg.name = e->value;
  cfg.end_time_s = require_double(raw, "Scenario.endTime");
  cfg.update_interval_s = require_double(raw, "Scenario.updateInterval");
  if (cfg.end_time_s <= 0) throw ConfigError("Scenario.endTime must be > 0");
  if (cfg.update_interval_s <= 0 || cfg.update_interval_s > cfg.end_time_s)
    throw ConfigError("Scenario.updateInterval must be in (0, endTime]");

  if (const RawEntry* e = raw.find("MovementModel.rngSeed"))
    cfg.rng_seed = parse_scaled_u64(e->value, e->line);
  if (const RawEntry* e = raw.find("Report.outputDir")) cfg.report_dir = e->value;

  if (const RawEntry* e = raw.find("MapBasedMovement.nrofMapFiles")) {
    if (parse_scaled_u64(e->value, e->line) != 1)
      throw ConfigError("exactly one map file is supported", e->line);
  }
  cfg.map_file = require(raw, "MapBasedMovement.mapFile1").value;

  // Interface definitions: every prefix carrying a .type key.
  for (const std::string& name : raw.keys_with_suffix(".type")) {
    const RawEntry& type = require(raw, name + ".type");
    if (type.value != "SimpleBroadcastInterface")
      throw ConfigError("unsupported interface type '" + type.value + "'", type.line);
    InterfaceSpec spec;
    spec.name = name;
    spec.transmit_speed = require_double(raw, name + ".transmitSpeed");
    spec.transmit_range = require_double(raw, name + ".transmitRange");
    if (spec.transmit_speed <= 0 || spec.transmit_range <= 0)
      throw ConfigError("interface '" + name + "' needs positive speed and range");
    cfg.interfaces.push_back(std::move(spec));
  }

  // Groups are Group1..GroupN, contiguous.
  std::size_t group_count = 0;
  while (raw.has_prefix("Group" + std::to_string(group_count + 1) + ".")) ++group_count;
  if (group_count == 0) throw ConfigError("no groups defined (Group1.* keys missing)");
  if (const RawEntry* e = raw.find("Scenario.nrofHostGroups")) {
    if (parse_scaled_u64(e->value, e->line) != group_count)
      throw ConfigError("Scenario.nrofHostGroups does not match the defined groups", e->line);
  }

  for (std::size_t gi = 1; gi <= group_count; ++gi) {
    const std::string p = "Group" + std::to_string(gi) + ".";
    GroupConfig g;
    g.name = "Group" + std::to_string(gi);
    g.count = static_cast<std::uint32_t>(require_u64(raw, p + "nrofHosts"));
    if (g.count == 0) throw ConfigError(g.name + ": nrofHosts must be > 0");

    const RawEntry& movement = require(raw, p + "movementModel");
    if (movement.value == "MapBasedMovement" || movement.value == "ShortestPathMapBasedMovement") {
      g.movement = MovementKind::map_based;
    } else if (movement.value == "StationaryMovement") {
      g.movement = MovementKind::stationary;
    } else {
      throw ConfigError("unsupported movement model '" + movement.value + "'", movement.line);
    }

    if (g.movement == MovementKind::map_based) {
      const RawEntry& speed = require(raw, p + "speed");
      const auto [lo, hi] = to_range(speed.value, speed.line);
      g.speed = {lo, hi};
      if (!(0 < lo && lo <= hi))
        throw ConfigError(g.name + ": speed range needs 0 < min <= max", speed.line);
    }
    if (const RawEntry* e = raw.find(p + "waitTime")) {
      const auto [lo, hi] = to_range(e->value, e->line);
      if (!(0 <= lo && lo <= hi))
        throw ConfigError(g.name + ": waitTime range needs 0 <= min <= max", e->line);
      g.wait = WaitRange{lo, hi};
    }

    g.buffer_bytes = require_u64(raw, p + "bufferSize");
    if (g.buffer_bytes == 0) throw ConfigError(g.name + ": bufferSize must be > 0");
    if (const RawEntry* e = raw.find(p + "msgTtl")) {
      g.msg_ttl_minutes = parse_scaled_double(e->value, e->line);
      if (g.msg_ttl_minutes <= 0) throw ConfigError(g.name + ": msgTtl must be > 0", e->line);
    }

    g.router = router_from_name(require(raw, p + "router").value);

    const auto n_ifaces = require_u64(raw, p + "nrofInterfaces");
    for (std::uint64_t i = 1; i <= n_ifaces; ++i) {
      const RawEntry& e = require(raw, p + "interface" + std::to_string(i));
      cfg.interface_by_name(e.value);  // must exist
      g.interfaces.push_back(e.value);
    }

    for (const RawEntry* e : raw.find_all(p + "nodeLocation")) {
      const auto [x, y] = to_range(e->value, e->line);
      g.locations.push_back({x, y});
    }
    if (g.movement == MovementKind::stationary && g.locations.size() != g.count)
      throw ConfigError(g.name + ": stationary group needs exactly nrofHosts nodeLocation entries");
    if (g.movement == MovementKind::map_based && !g.locations.empty())
      throw ConfigError(g.name + ": nodeLocation is only valid for StationaryMovement");

    cfg.groups.push_back(std::move(g));
  }

  // Traffic generator.
  std::uint64_t nrof_events = 0;
  if (const RawEntry* e = raw.find("Events.nrof")) nrof_events = parse_scaled_u64(e->value, e->line);
  if (nrof_events > 1) throw ConfigError("only a single event generator is supported");
  if (nrof_events == 1) {
    const RawEntry& cls = require(raw, "Events1.class");
    if (cls.value != "MessageEventGenerator")
      throw ConfigError("unsupported event generator '" + cls.value + "'", cls.line);
    EventGeneratorConfig ev;
    {
      const RawEntry& e = require(raw, "Events1.interval");
      std::tie(ev.interval_min_s, ev.interval_max_s) = to_range(e.value, e.line);
      if (!(0 < ev.interval_min_s && ev.interval_min_s <= ev.interval_max_s))
        throw ConfigError("Events1.interval needs 0 < min <= max", e.line);
    }
    {
      const RawEntry& e = require(raw, "Events1.size");
      const auto [lo, hi] = to_range(e.value, e.line, /*scaled=*/true);
      ev.size_min = static_cast<std::uint64_t>(lo);
      ev.size_max = static_cast<std::uint64_t>(hi);
      if (ev.size_min == 0 || ev.size_min > ev.size_max)
        throw ConfigError("Events1.size needs 0 < min <= max", e.line);
    }
    const std::uint32_t total = cfg.total_nodes();
    const auto host_range = [&](const char* key) -> std::pair<std::uint32_t, std::uint32_t> {
      const RawEntry& e = require(raw, key);
      const auto [lo, hi] = to_range(e.value, e.line);
      if (lo < 0 || hi <= lo || hi > total || lo != std::floor(lo) || hi != std::floor(hi))
        throw ConfigError(std::string(key) + ": invalid id range for " + std::to_string(total) +
                              " nodes",
                          e.line);
      return {static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi)};
    };
    std::tie(ev.src_lo, ev.src_hi) = host_range("Events1.hosts");
    std::tie(ev.dst_lo, ev.dst_hi) = host_range("Events1.tohosts");
    if (ev.src_lo < ev.dst_hi && ev.dst_lo < ev.src_hi)
      throw ConfigError("Events1.hosts and Events1.tohosts must be disjoint");
    if (const RawEntry* e = raw.find("Events1.prefix")) ev.id_prefix = e->value;
    cfg.events = std::move(ev);
  }

  // PROPHET parameters (scenario may override the protocol defaults).
  if (const RawEntry* e = raw.find("ProphetRouter.secondsInTimeUnit"))
    cfg.prophet.seconds_in_time_unit = parse_scaled_double(e->value, e->line);
  if (const RawEntry* e = raw.find("ProphetRouter.pInit"))
    cfg.prophet.p_init = parse_scaled_double(e->value, e->line);
  if (const RawEntry* e = raw.find("ProphetRouter.beta"))
    cfg.prophet.beta = parse_scaled_double(e->value, e->line);
  if (const RawEntry* e = raw.find("ProphetRouter.gamma"))
    cfg.prophet.gamma = parse_scaled_double(e->value, e->line);
  const ProphetParams& pp = cfg.prophet;
  if (!(pp.p_init > 0 && pp.p_init <= 1) || !(pp.beta > 0 && pp.beta <= 1) ||
      !(pp.gamma > 0 && pp.gamma <= 1) || pp.seconds_in_time_unit <= 0)
    throw ConfigError("ProphetRouter parameters out of range");

  for (const RawEntry* e : raw.unconsumed()) {
    cfg.warnings.push_back("unknown key '" + e->key + "' (line " + std::to_string(e->line) +
                           ") ignored");
  }
  return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path, const Overrides& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  ScenarioConfig cfg = parse_scenario(buf.str(), std::filesystem::path(path).stem().string(),
                                      overrides);
  // Map paths are resolved relative to the scenario file.
  const std::filesystem::path map(cfg.map_file);
  if (map.is_relative()) {
    cfg.map_file = (std::filesystem::path(path).parent_path() / map).string();
  }
  return cfg;
}

}  // namespace opportune
