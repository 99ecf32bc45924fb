#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "opportune/buffer.hpp"

namespace opportune {

/// Set of message ids a node currently buffers, as exchanged at contact time.
struct SummaryVector {
  std::vector<std::uint8_t> present;  // by message index

  static SummaryVector of(const Buffer& buf, std::uint32_t msg_count);
  bool has(MsgIdx m) const { return m < present.size() && present[m] != 0; }
};

/// PROPHET constants. Defaults are the classic protocol values; the scenario
/// file may override them.
struct ProphetParams {
  double p_init = 0.75;
  double beta = 0.25;
  double gamma = 0.98;
  double seconds_in_time_unit = 30.0;
};

/// Per-node delivery predictability map P(self, destination). Entries are a
/// flat vector sorted by destination id: deterministic iteration, cheap
/// snapshots, and linear-time transitivity merges.
struct PredictabilityTable {
  std::vector<std::pair<NodeId, double>> p;  // sorted by NodeId; absent means 0
  double last_aged_at = 0.0;

  double get(NodeId dst) const;
  void set(NodeId dst, double value);
};

/// Direct-encounter update: P(a,peer) += (1 - P) * p_init.
void prophet_encounter_update(PredictabilityTable& table, NodeId peer, const ProphetParams& params);

/// Ageing: every P decays by gamma per elapsed whole time unit; the clock
/// advances only by whole units so repeated ageing composes exactly.
void prophet_age(PredictabilityTable& table, double now, const ProphetParams& params);

/// Transitivity through the encountered peer:
/// P(a,c) += (1 - P(a,c)) * P(a,peer) * P(peer,c) * beta for all c != self.
void prophet_transitivity(PredictabilityTable& self, const PredictabilityTable& peer_table,
                          NodeId peer, NodeId self_id, const ProphetParams& params);

/// Epidemic offer list: everything the peer lacks; copies destined to the
/// peer first, then oldest received first.
std::vector<MsgIdx> epidemic_plan(const Buffer& self, const SummaryVector& peer_has, NodeId peer,
                                  const MessageRegistry& registry);

/// PROPHET offer list: direct-delivery copies unconditionally, otherwise only
/// destinations the peer predicts strictly better. Same ordering as epidemic.
std::vector<MsgIdx> prophet_plan(const PredictabilityTable& self, const PredictabilityTable& peer,
                                 const Buffer& self_buf, const SummaryVector& peer_has,
                                 NodeId peer_id, const MessageRegistry& registry);

/// Contact-driven protocol hooks used by the engine. State lives per run.
class RoutingProtocol {
 public:
  virtual ~RoutingProtocol() = default;
  virtual const char* name() const = 0;
  /// Called once when a link is first established.
  virtual void on_link_up(NodeId /*a*/, NodeId /*b*/, double /*now*/) {}
  /// Ordered offers from sender to receiver; re-evaluated while links persist.
  virtual std::vector<MsgIdx> plan(NodeId sender, NodeId receiver, double now,
                                   const std::vector<Buffer>& buffers,
                                   const MessageRegistry& registry) = 0;
};

class EpidemicRouting final : public RoutingProtocol {
 public:
  const char* name() const override { return "epidemic"; }
  std::vector<MsgIdx> plan(NodeId sender, NodeId receiver, double now,
                           const std::vector<Buffer>& buffers,
                           const MessageRegistry& registry) override;
};

class ProphetRouting final : public RoutingProtocol {
 public:
  ProphetRouting(std::uint32_t node_count, const ProphetParams& params) : params_(params) {
    tables_.resize(node_count);
  }

  const char* name() const override { return "prophet"; }
  void on_link_up(NodeId a, NodeId b, double now) override;
  std::vector<MsgIdx> plan(NodeId sender, NodeId receiver, double now,
                           const std::vector<Buffer>& buffers,
                           const MessageRegistry& registry) override;

  const PredictabilityTable& table(NodeId n) const { return tables_[n]; }

 private:
  ProphetParams params_;
  std::vector<PredictabilityTable> tables_;
  PredictabilityTable snapshot_;  // scratch, reused across link-up events
};

std::unique_ptr<RoutingProtocol> make_protocol(const std::string& router_name,
                                               std::uint32_t node_count,
                                               const ProphetParams& params);

}  // namespace opportune
