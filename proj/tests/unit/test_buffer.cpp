#include <doctest.h>

#include <set>

#include "opportune/buffer.hpp"
#include "opportune/rng.hpp"

using namespace opportune;

namespace {

MessageRegistry make_registry(const std::vector<std::uint64_t>& sizes, double ttl_minutes = 30.0) {
  MessageRegistry reg;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    reg.add({"M_" + std::to_string(i + 1), 0, 99, sizes[i], 0.0, ttl_minutes});
  }
  return reg;
}

}  // namespace

TEST_CASE("empty 5M buffer accepts a 500k copy without drops") {
  const auto reg = make_registry({500000});
  Buffer buf(5000000);
  const auto res = buf.insert({0, 1.0, 0}, reg, 1.0);
  CHECK(res.accepted);
  CHECK(res.dropped.empty());
  CHECK(buf.occupied() == 500000);
}

TEST_CASE("overflow evicts oldest-received copies until the new copy fits") {
  // twelve 400k copies = 4.8M of 5M; a 500k arrival must evict the two oldest
  std::vector<std::uint64_t> sizes(12, 400000);
  sizes.push_back(500000);
  const auto reg = make_registry(sizes);
  Buffer buf(5000000);
  for (MsgIdx m = 0; m < 12; ++m) CHECK(buf.insert({m, static_cast<double>(m), 0}, reg, m).accepted);
  CHECK(buf.occupied() == 4800000);
  const auto res = buf.insert({12, 100.0, 1}, reg, 100.0);
  CHECK(res.accepted);
  CHECK(res.dropped == std::vector<MsgIdx>{0});  // evicting the oldest already frees enough
  CHECK(buf.occupied() == 4800000 - 400000 + 500000);
  CHECK(!buf.has(0));
  CHECK(buf.has(12));
}

TEST_CASE("copy larger than total capacity is rejected, buffer unchanged") {
  const auto reg = make_registry({400000, 6000000});
  Buffer buf(5000000);
  CHECK(buf.insert({0, 1.0, 0}, reg, 1.0).accepted);
  const auto res = buf.insert({1, 2.0, 0}, reg, 2.0);
  CHECK(!res.accepted);
  CHECK(res.dropped.empty());
  CHECK(buf.occupied() == 400000);
  CHECK(buf.has(0));
}

TEST_CASE("duplicate ids never stored twice") {
  const auto reg = make_registry({1000});
  Buffer buf(10000);
  CHECK(buf.insert({0, 1.0, 0}, reg, 1.0).accepted);
  CHECK(!buf.insert({0, 2.0, 1}, reg, 2.0).accepted);
  CHECK(buf.count() == 1);
}

TEST_CASE("ttl expiry boundary is strict") {
  const auto reg = make_registry({1000});  // created_at 0, ttl 30 min
  Buffer buf(10000);
  buf.insert({0, 0.0, 0}, reg, 0.0);
  CHECK(buf.expire(reg, 1800.0).empty());  // exactly ttl: retained
  const auto dropped = buf.expire(reg, 1800.1);
  CHECK(dropped == std::vector<MsgIdx>{0});
  CHECK(buf.occupied() == 0);
}

TEST_CASE("expire on empty buffer") {
  const auto reg = make_registry({});
  Buffer buf(1000);
  CHECK(buf.expire(reg, 100.0).empty());
}

TEST_CASE("random operation sequences keep the capacity invariant") {
  Rng rng(2024);
  for (int iter = 0; iter < 30; ++iter) {
    MessageRegistry reg;
    const int n_msgs = 40;
    for (int i = 0; i < n_msgs; ++i) {
      reg.add({"M_" + std::to_string(i), 0, 99, 50 + rng.uniform_index(400),
               rng.uniform(0.0, 50.0), 0.5 + rng.uniform01()});  // ttl 30..90 s
    }
    Buffer buf(1000);
    double now = 0.0;
    std::uint64_t accepted = 0, dropped = 0;
    for (int op = 0; op < 200; ++op) {
      now += rng.uniform(0.0, 5.0);
      const auto m = static_cast<MsgIdx>(rng.uniform_index(n_msgs));
      if (rng.uniform_index(4) == 0) {
        dropped += buf.expire(reg, now).size();
      } else if (!buf.has(m) && reg.at(m).created_at <= now) {
        const auto res = buf.insert({m, now, 0}, reg, now);
        accepted += res.accepted ? 1 : 0;
        dropped += res.dropped.size();
      }
      CHECK(buf.occupied() <= buf.capacity());
      std::uint64_t sum = 0;
      std::set<MsgIdx> ids;
      for (const auto& c : buf.copies()) {
        sum += reg.at(c.msg).size;
        CHECK(ids.insert(c.msg).second);  // no duplicate ids
      }
      CHECK(sum == buf.occupied());
    }
    CHECK(accepted >= dropped);  // every drop was caused by an accepted insert
  }
}
