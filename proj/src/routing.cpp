#include "opportune/routing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace opportune {

SummaryVector SummaryVector::of(const Buffer& buf, std::uint32_t msg_count) {
  SummaryVector sv;
  sv.present.assign(msg_count, 0);
  for (const MessageCopy& c : buf.copies()) sv.present[c.msg] = 1;
  return sv;
}

double PredictabilityTable::get(NodeId dst) const {
  const auto it = std::lower_bound(p.begin(), p.end(), dst,
                                   [](const auto& e, NodeId d) { return e.first < d; });
  return (it != p.end() && it->first == dst) ? it->second : 0.0;
}

void PredictabilityTable::set(NodeId dst, double value) {
  const auto it = std::lower_bound(p.begin(), p.end(), dst,
                                   [](const auto& e, NodeId d) { return e.first < d; });
  if (it != p.end() && it->first == dst)
    it->second = value;
  else
    p.insert(it, {dst, value});
}

void prophet_encounter_update(PredictabilityTable& table, NodeId peer,
                              const ProphetParams& params) {
  const double old = table.get(peer);
  table.set(peer, old + (1.0 - old) * params.p_init);
}

void prophet_age(PredictabilityTable& table, double now, const ProphetParams& params) {
  const double elapsed = now - table.last_aged_at;
  if (elapsed < params.seconds_in_time_unit) return;
  const auto k = static_cast<std::uint64_t>(std::floor(elapsed / params.seconds_in_time_unit));
  // Sequential multiplies (not pow) so ageing by k1 then k2 units is
  // bit-identical to ageing by k1+k2 at once.
  for (auto& [dst, value] : table.p) {
    for (std::uint64_t i = 0; i < k; ++i) value *= params.gamma;
  }
  table.last_aged_at += static_cast<double>(k) * params.seconds_in_time_unit;
}

void prophet_transitivity(PredictabilityTable& self, const PredictabilityTable& peer_table,
                          NodeId peer, NodeId self_id, const ProphetParams& params) {
  const double p_ab = self.get(peer);
  if (p_ab == 0.0 || peer_table.p.empty()) return;
  // Sorted two-pointer merge keeps this linear in the table sizes.
  std::vector<std::pair<NodeId, double>> merged;
  merged.reserve(self.p.size() + peer_table.p.size());
  auto s = self.p.begin();
  for (const auto& [c, p_bc] : peer_table.p) {
    while (s != self.p.end() && s->first < c) merged.push_back(*s++);
    if (c == self_id) continue;
    double p_ac = 0.0;
    if (s != self.p.end() && s->first == c) p_ac = (s++)->second;
    merged.emplace_back(c, p_ac + (1.0 - p_ac) * p_ab * p_bc * params.beta);
  }
  merged.insert(merged.end(), s, self.p.end());
  self.p = std::move(merged);
}

namespace {

// Shared offer ordering: copies destined to the peer first, then oldest
// received first. Buffer order is already received_at ascending.
template <typename Eligible, typename PeerHas>
std::vector<MsgIdx> ordered_offers(const Buffer& self, NodeId peer, const MessageRegistry& registry,
                                   const Eligible& eligible, const PeerHas& peer_has) {
  std::vector<MsgIdx> direct, rest;
  for (const MessageCopy& c : self.copies()) {
    if (peer_has(c.msg)) continue;
    const Message& m = registry.at(c.msg);
    if (m.destination == peer)
      direct.push_back(c.msg);
    else if (eligible(m))
      rest.push_back(c.msg);
  }
  direct.insert(direct.end(), rest.begin(), rest.end());
  return direct;
}

}  // namespace

std::vector<MsgIdx> epidemic_plan(const Buffer& self, const SummaryVector& peer_has, NodeId peer,
                                  const MessageRegistry& registry) {
  return ordered_offers(
      self, peer, registry, [](const Message&) { return true; },
      [&](MsgIdx m) { return peer_has.has(m); });
}

std::vector<MsgIdx> prophet_plan(const PredictabilityTable& self, const PredictabilityTable& peer,
                                 const Buffer& self_buf, const SummaryVector& peer_has,
                                 NodeId peer_id, const MessageRegistry& registry) {
  return ordered_offers(
      self_buf, peer_id, registry,
      [&](const Message& m) { return peer.get(m.destination) > self.get(m.destination); },
      [&](MsgIdx m) { return peer_has.has(m); });
}

std::vector<MsgIdx> EpidemicRouting::plan(NodeId sender, NodeId receiver, double /*now*/,
                                          const std::vector<Buffer>& buffers,
                                          const MessageRegistry& registry) {
  const Buffer& self = buffers[sender];
  if (self.copies().empty()) return {};
  const Buffer& peer = buffers[receiver];
  return ordered_offers(
      self, receiver, registry, [](const Message&) { return true; },
      [&](MsgIdx m) { return peer.has(m); });
}

void ProphetRouting::on_link_up(NodeId a, NodeId b, double now) {
  prophet_age(tables_[a], now, params_);
  prophet_age(tables_[b], now, params_);
  prophet_encounter_update(tables_[a], b, params_);
  prophet_encounter_update(tables_[b], a, params_);
  // Transitivity works on the tables as exchanged at contact time: b reads
  // a's post-encounter state, not the transitively updated one.
  snapshot_.p = tables_[a].p;
  prophet_transitivity(tables_[a], tables_[b], b, a, params_);
  prophet_transitivity(tables_[b], snapshot_, a, b, params_);
}

std::vector<MsgIdx> ProphetRouting::plan(NodeId sender, NodeId receiver, double now,
                                         const std::vector<Buffer>& buffers,
                                         const MessageRegistry& registry) {
  const Buffer& self = buffers[sender];
  if (self.copies().empty()) return {};
  prophet_age(tables_[sender], now, params_);
  prophet_age(tables_[receiver], now, params_);
  const Buffer& peer = buffers[receiver];
  const PredictabilityTable& st = tables_[sender];
  const PredictabilityTable& rt = tables_[receiver];
  return ordered_offers(
      self, receiver, registry,
      [&](const Message& m) { return rt.get(m.destination) > st.get(m.destination); },
      [&](MsgIdx m) { return peer.has(m); });
}

std::unique_ptr<RoutingProtocol> make_protocol(const std::string& router_name,
                                               std::uint32_t node_count,
                                               const ProphetParams& params) {
  if (router_name == "EpidemicRouter" || router_name == "epidemic")
    return std::make_unique<EpidemicRouting>();
  if (router_name == "ProphetRouter" || router_name == "prophet")
    return std::make_unique<ProphetRouting>(node_count, params);
  throw std::runtime_error("unknown router: " + router_name);
}

}  // namespace opportune
