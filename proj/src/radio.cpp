#include "opportune/radio.hpp"

#include <algorithm>
#include <cassert>

namespace opportune {

KindId InterfaceTable::add_kind(const InterfaceSpec& spec) {
  const auto id = static_cast<KindId>(specs_.size());
  specs_.push_back(spec);
  member_.emplace_back(node_count_, 0);
  range_.emplace_back(node_count_, 0.0);
  members_.emplace_back();
  return id;
}

void InterfaceTable::set_node_count(std::uint32_t n) {
  node_count_ = n;
  for (auto& m : member_) m.assign(n, 0);
  for (auto& r : range_) r.assign(n, 0.0);
  for (auto& v : members_) v.clear();
}

void InterfaceTable::assign(NodeId node, KindId kind) {
  if (member_[kind][node] != 0) return;
  member_[kind][node] = 1;
  range_[kind][node] = specs_[kind].transmit_range;
  auto& v = members_[kind];
  v.insert(std::lower_bound(v.begin(), v.end(), node), node);
}

double InterfaceTable::max_range(KindId kind) const {
  double m = 0.0;
  for (NodeId n : members_[kind]) m = std::max(m, range_[kind][n]);
  return m;
}

std::vector<Link> detect_contacts(const InterfaceTable& table, std::span<const double> xs,
                                  std::span<const double> ys) {
  std::vector<Link> out;
  std::vector<double> sub_x, sub_y;
  std::vector<std::uint32_t> hits;
  for (KindId k = 0; k < table.kind_count(); ++k) {
    const auto members = table.nodes_with(k);
    if (members.size() < 2) continue;
    const double rmax = table.max_range(k);
    if (rmax <= 0.0) continue;
    sub_x.clear();
    sub_y.clear();
    for (NodeId n : members) {
      sub_x.push_back(xs[n]);
      sub_y.push_back(ys[n]);
    }
    SpatialGrid grid(rmax);
    grid.build(sub_x, sub_y);
    for (std::uint32_t i = 0; i < members.size(); ++i) {
      hits.clear();
      grid.query(sub_x[i], sub_y[i], rmax * rmax, hits);
      for (std::uint32_t j : hits) {
        if (j <= i) continue;  // emit each pair once, skip self
        const NodeId na = members[i];
        const NodeId nb = members[j];
        const double r = std::min(table.range(na, k), table.range(nb, k));
        const double dx = sub_x[i] - sub_x[j];
        const double dy = sub_y[i] - sub_y[j];
        if (dx * dx + dy * dy <= r * r) out.push_back({k, na, nb});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Link& l, const Link& r) { return l.key() < r.key(); });
  return out;
}

ContactTracker::ContactTracker(const InterfaceTable& table, double dt, double max_speed_mps,
                               std::uint32_t rebuild_every)
    : table_(table), rebuild_every_(rebuild_every == 0 ? 1 : rebuild_every) {
  // Two nodes can close at most 2*v_max*dt per tick; pairs are cached for
  // rebuild_every ticks, the check happening at the end of each.
  slack_ = 2.0 * max_speed_mps * dt * static_cast<double>(rebuild_every_) + 1e-6;
  pairs_.resize(table.kind_count());
}

void ContactTracker::rebuild(std::span<const double> xs, std::span<const double> ys) {
  std::vector<double> sub_x, sub_y;
  std::vector<std::uint32_t> hits;
  for (KindId k = 0; k < table_.kind_count(); ++k) {
    KindPairs& kp = pairs_[k];
    kp.a.clear();
    kp.b.clear();
    kp.r2.clear();
    const auto members = table_.nodes_with(k);
    if (members.size() < 2) continue;
    const double rmax = table_.max_range(k);
    if (rmax <= 0.0) continue;
    const double reach = rmax + slack_;
    sub_x.clear();
    sub_y.clear();
    for (NodeId n : members) {
      sub_x.push_back(xs[n]);
      sub_y.push_back(ys[n]);
    }
    SpatialGrid grid(reach);
    grid.build(sub_x, sub_y);
    for (std::uint32_t i = 0; i < members.size(); ++i) {
      hits.clear();
      grid.query(sub_x[i], sub_y[i], reach * reach, hits);
      for (std::uint32_t j : hits) {
        if (j <= i) continue;
        const NodeId na = members[i];
        const NodeId nb = members[j];
        const double r = std::min(table_.range(na, k), table_.range(nb, k));
        const double cand = r + slack_;
        const double dx = sub_x[i] - sub_x[j];
        const double dy = sub_y[i] - sub_y[j];
        if (dx * dx + dy * dy <= cand * cand) {
          kp.a.push_back(na);
          kp.b.push_back(nb);
          kp.r2.push_back(r * r);
        }
      }
    }
    kp.mask.assign(kp.a.size(), 0);
  }
}

const std::vector<Link>& ContactTracker::update(std::uint64_t tick, std::span<const double> xs,
                                                std::span<const double> ys) {
  if (tick >= next_rebuild_) {
    rebuild(xs, ys);
    next_rebuild_ = tick + rebuild_every_;
  }
  const auto& kernels = kernels::active_kernels();
  links_.clear();
  for (KindId k = 0; k < pairs_.size(); ++k) {
    KindPairs& kp = pairs_[k];
    const auto n = static_cast<std::uint32_t>(kp.a.size());
    if (n == 0) continue;
    kernels.pairs_within_range(xs.data(), ys.data(), kp.a.data(), kp.b.data(), kp.r2.data(), n,
                               kp.mask.data());
    for (std::uint32_t i = 0; i < n; ++i) {
      if (kp.mask[i] != 0) links_.push_back({k, kp.a[i], kp.b[i]});
    }
  }
  // pairs are grid-ordered within a kind; sort for the (kind, a, b) contract
  std::sort(links_.begin(), links_.end(),
            [](const Link& l, const Link& r) { return l.key() < r.key(); });
  return links_;
}

void TransferBoard::reset(std::uint32_t node_count, std::uint32_t kind_count) {
  node_count_ = node_count;
  busy_.assign(static_cast<std::size_t>(node_count) * kind_count, 0);
  active_.clear();
}

void TransferBoard::start(const Transfer& t) {
  assert(!busy(t.sender, t.kind) && !busy(t.receiver, t.kind));
  busy_[index(t.sender, t.kind)] = 1;
  busy_[index(t.receiver, t.kind)] = 1;
  active_.push_back(t);
}

void TransferBoard::step(double now, const std::vector<std::uint64_t>& alive_link_keys,
                         const std::function<void(const Transfer&)>& on_complete,
                         const std::function<void(const Transfer&)>& on_abort) {
  const auto alive = [&](std::uint64_t key) {
    return std::binary_search(alive_link_keys.begin(), alive_link_keys.end(), key);
  };
  std::size_t w = 0;
  for (std::size_t i = 0; i < active_.size(); ++i) {
    const Transfer t = active_[i];
    const bool aborted = !alive(t.link_key);
    if (aborted || t.completes_at <= now) {
      busy_[index(t.sender, t.kind)] = 0;
      busy_[index(t.receiver, t.kind)] = 0;
      if (aborted)
        on_abort(t);
      else
        on_complete(t);
    } else {
      active_[w++] = t;
    }
  }
  active_.resize(w);
}

}  // namespace opportune
