#include "opportune/buffer.hpp"

#include <algorithm>
#include <limits>

namespace opportune {

namespace {
constexpr double kUnknown = -1.0;
}

const MessageCopy* Buffer::find(MsgIdx m) const {
  for (const auto& c : copies_)
    if (c.msg == m) return &c;
  return nullptr;
}

void Buffer::mark(MsgIdx m, bool present) {
  if (m >= present_.size()) present_.resize(m + 1, 0);
  present_[m] = present ? 1 : 0;
}

InsertResult Buffer::insert(const MessageCopy& copy, const MessageRegistry& registry,
                            double /*now*/) {
  InsertResult result;
  if (has(copy.msg)) return result;  // duplicates are filtered upstream; stay safe
  const std::uint64_t size = registry.at(copy.msg).size;
  if (size > capacity_) return result;  // cannot ever fit: reject, evict nothing

  while (occupied_ + size > capacity_) {
    const MessageCopy victim = copies_.front();
    copies_.erase(copies_.begin());
    occupied_ -= registry.at(victim.msg).size;
    mark(victim.msg, false);
    result.dropped.push_back(victim.msg);
  }
  // arrivals are nearly ordered already; scan from the back for the slot
  auto it = copies_.end();
  while (it != copies_.begin() && (it - 1)->received_at > copy.received_at) --it;
  copies_.insert(it, copy);
  occupied_ += size;
  mark(copy.msg, true);
  if (next_expiry_ != kUnknown) {
    const double e = registry.expiry_time(copy.msg);
    if (e < next_expiry_) next_expiry_ = e;
  }
  result.accepted = true;
  return result;
}

std::vector<MsgIdx> Buffer::expire(const MessageRegistry& registry, double now) {
  std::vector<MsgIdx> dropped;
  if (copies_.empty()) return dropped;
  if (next_expiry_ == kUnknown) {
    next_expiry_ = std::numeric_limits<double>::infinity();
    for (const auto& c : copies_) next_expiry_ = std::min(next_expiry_, registry.expiry_time(c.msg));
  }
  if (now <= next_expiry_) return dropped;  // expiry is strict: age > ttl

  next_expiry_ = std::numeric_limits<double>::infinity();
  std::size_t w = 0;
  for (std::size_t i = 0; i < copies_.size(); ++i) {
    const MessageCopy c = copies_[i];
    const double e = registry.expiry_time(c.msg);
    if (now > e) {
      occupied_ -= registry.at(c.msg).size;
      mark(c.msg, false);
      dropped.push_back(c.msg);
    } else {
      next_expiry_ = std::min(next_expiry_, e);
      copies_[w++] = c;
    }
  }
  copies_.resize(w);
  return dropped;
}

bool Buffer::erase(MsgIdx m, const MessageRegistry& registry) {
  for (auto it = copies_.begin(); it != copies_.end(); ++it) {
    if (it->msg == m) {
      occupied_ -= registry.at(m).size;
      mark(m, false);
      copies_.erase(it);
      next_expiry_ = kUnknown;
      return true;
    }
  }
  return false;
}

}  // namespace opportune
