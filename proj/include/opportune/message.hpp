#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "opportune/radio.hpp"

namespace opportune {

using MsgIdx = std::uint32_t;

/// Immutable message descriptor. Copies reference it by dense index.
struct Message {
  std::string id;
  NodeId source;
  NodeId destination;
  std::uint64_t size;      // bytes
  double created_at;       // seconds
  double ttl_minutes;      // copies older than ttl*60 s are purged
};

/// All messages created during one run, in creation order.
class MessageRegistry {
 public:
  MsgIdx add(Message m) {
    const auto idx = static_cast<MsgIdx>(messages_.size());
    by_id_.emplace(m.id, idx);
    messages_.push_back(std::move(m));
    return idx;
  }

  const Message& at(MsgIdx i) const { return messages_[i]; }
  std::uint32_t count() const { return static_cast<std::uint32_t>(messages_.size()); }

  double expiry_time(MsgIdx i) const {
    const Message& m = messages_[i];
    return m.created_at + m.ttl_minutes * 60.0;
  }

  const Message* find(const std::string& id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &messages_[it->second];
  }

 private:
  std::vector<Message> messages_;
  std::unordered_map<std::string, MsgIdx> by_id_;
};

}  // namespace opportune
