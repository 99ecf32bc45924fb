#pragma once

#include <cstdint>
#include <vector>

#include "opportune/message.hpp"

namespace opportune {

/// One buffered copy of a message.
struct MessageCopy {
  MsgIdx msg;
  double received_at;
  std::uint32_t hop_count;  // relay transmissions from the source to this copy
};

struct InsertResult {
  bool accepted = false;
  std::vector<MsgIdx> dropped;  // overflow evictions caused by this insert
};

/// Per-node message store. Copies are kept in received_at order; overflow
/// evicts the oldest-received copies first (FIFO). At most one copy per
/// message id.
class Buffer {
 public:
  Buffer() = default;
  explicit Buffer(std::uint64_t capacity_bytes) : capacity_(capacity_bytes) {}

  std::uint64_t capacity() const { return capacity_; }
  std::uint64_t occupied() const { return occupied_; }
  std::size_t count() const { return copies_.size(); }
  bool has(MsgIdx m) const { return m < present_.size() && present_[m] != 0; }
  const std::vector<MessageCopy>& copies() const { return copies_; }

  const MessageCopy* find(MsgIdx m) const;

  /// Rejects (without evicting) copies larger than total capacity, and
  /// duplicate ids. Otherwise evicts oldest copies until the new one fits.
  InsertResult insert(const MessageCopy& copy, const MessageRegistry& registry, double now);

  /// Removes copies with now - created_at > ttl*60 (strict). Returns them.
  std::vector<MsgIdx> expire(const MessageRegistry& registry, double now);

  /// Removes one copy by message id (delivery bookkeeping, tests).
  bool erase(MsgIdx m, const MessageRegistry& registry);

 private:
  void mark(MsgIdx m, bool present);

  std::uint64_t capacity_ = 0;
  std::uint64_t occupied_ = 0;
  std::vector<MessageCopy> copies_;      // received_at ascending, stable
  std::vector<std::uint8_t> present_;    // by message index
  double next_expiry_ = -1.0;            // lazy cache; <0 means unknown
};

}  // namespace opportune
