#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "opportune/spatial_grid.hpp"

namespace opportune {

using NodeId = std::uint32_t;
using KindId = std::uint16_t;

/// Broadcast interface class (e.g. the scenario's btInterface): every node
/// carrying the same kind can link; different kinds never interconnect.
struct InterfaceSpec {
  std::string name;
  double transmit_speed = 0.0;  // bytes/second
  double transmit_range = 0.0;  // meters
};

/// Range contact between two nodes on one interface kind. a < b always.
struct Link {
  KindId kind;
  NodeId a;
  NodeId b;

  std::uint64_t key() const {
    return (static_cast<std::uint64_t>(kind) << 48) | (static_cast<std::uint64_t>(a) << 24) |
           static_cast<std::uint64_t>(b);
  }
  friend bool operator==(const Link&, const Link&) = default;
};

/// Which nodes carry which interface kinds, with per-node range/speed.
class InterfaceTable {
 public:
  KindId add_kind(const InterfaceSpec& spec);
  void set_node_count(std::uint32_t n);

  void assign(NodeId node, KindId kind);

  std::uint32_t node_count() const { return node_count_; }
  std::uint32_t kind_count() const { return static_cast<std::uint32_t>(specs_.size()); }
  const InterfaceSpec& spec(KindId kind) const { return specs_[kind]; }
  bool has(NodeId node, KindId kind) const { return member_[kind][node] != 0; }
  double range(NodeId node, KindId kind) const { return range_[kind][node]; }
  double speed(NodeId /*node*/, KindId kind) const { return specs_[kind].transmit_speed; }
  std::span<const NodeId> nodes_with(KindId kind) const { return members_[kind]; }
  double max_range(KindId kind) const;

 private:
  std::uint32_t node_count_ = 0;
  std::vector<InterfaceSpec> specs_;
  std::vector<std::vector<std::uint8_t>> member_;  // [kind][node]
  std::vector<std::vector<double>> range_;         // [kind][node]
  std::vector<std::vector<NodeId>> members_;       // [kind] sorted node list
};

/// All-pairs-exact contact detection through the spatial grid: nodes a,b are
/// linked on kind K iff both carry K and distance <= min(range_a, range_b).
/// Output sorted by (kind, a, b).
std::vector<Link> detect_contacts(const InterfaceTable& table, std::span<const double> xs,
                                  std::span<const double> ys);

/// Amortized contact detection for the tick loop. A candidate-pair list is
/// rebuilt from the grid every `rebuild_every` ticks with enough slack radius
/// that no pair can close into range between rebuilds; each tick only the
/// cached pairs are distance-checked (SIMD kernel). Produces exactly the
/// detect_contacts link set.
class ContactTracker {
 public:
  ContactTracker(const InterfaceTable& table, double dt, double max_speed_mps,
                 std::uint32_t rebuild_every = 10);

  const std::vector<Link>& update(std::uint64_t tick, std::span<const double> xs,
                                  std::span<const double> ys);

  const std::vector<Link>& links() const { return links_; }

 private:
  void rebuild(std::span<const double> xs, std::span<const double> ys);

  const InterfaceTable& table_;
  double slack_;
  std::uint32_t rebuild_every_;
  std::uint64_t next_rebuild_ = 0;
  // candidate pairs, grouped by kind, (a,b) ascending within each kind
  struct KindPairs {
    std::vector<NodeId> a, b;
    std::vector<double> r2;  // min(range_a, range_b)^2, the true link radius
    std::vector<std::uint8_t> mask;
  };
  std::vector<KindPairs> pairs_;
  std::vector<Link> links_;
};

/// In-flight message copy. hop_at_receiver is staged when the transfer
/// starts, so a sender-side eviction mid-flight cannot change the outcome.
struct Transfer {
  std::uint32_t msg;
  NodeId sender;
  NodeId receiver;
  KindId kind;
  double started_at;
  double completes_at;
  std::uint32_t hop_at_receiver;
  std::uint64_t link_key;
};

inline double transfer_time(std::uint64_t size_bytes, double speed_bytes_per_s) {
  return static_cast<double>(size_bytes) / speed_bytes_per_s;
}

/// Active transfers plus the interface busy board. An interface is fully
/// busy while sending or receiving; at most one transfer per (node, kind).
class TransferBoard {
 public:
  void reset(std::uint32_t node_count, std::uint32_t kind_count);

  bool busy(NodeId node, KindId kind) const { return busy_[index(node, kind)] != 0; }
  void start(const Transfer& t);

  /// Aborts transfers whose link vanished, then completes transfers with
  /// completes_at <= now, in start order. Interfaces are freed either way.
  void step(double now, const std::vector<std::uint64_t>& alive_link_keys,
            const std::function<void(const Transfer&)>& on_complete,
            const std::function<void(const Transfer&)>& on_abort);

  std::span<const Transfer> active() const { return active_; }

 private:
  std::size_t index(NodeId node, KindId kind) const { return static_cast<std::size_t>(kind) * node_count_ + node; }
  std::uint32_t node_count_ = 0;
  std::vector<std::uint8_t> busy_;
  std::vector<Transfer> active_;
};

}  // namespace opportune
