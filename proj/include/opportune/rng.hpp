#pragma once

#include <cstdint>
#include <string_view>

namespace opportune {

/// Deterministic PRNG (xoshiro256++). All randomness in a run flows through
/// named substreams derived from the scenario seed, so results are
/// reproducible bit-for-bit across platforms; std::random distributions are
/// deliberately avoided because their output is implementation-defined.
class Rng {
 public:
  Rng() : Rng(0) {}
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform in [0,1) with 53 bits of randomness.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo,hi).
  double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

  /// Uniform index in [0,n). n must be > 0. Unbiased (Lemire).
  std::uint64_t uniform_index(std::uint64_t n);

  /// Uniform integer in [lo,hi], both inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(uniform_index(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::uint64_t s_[4];
};

/// Factory for independent substreams of one root seed. Derivation is a pure
/// function of (seed, stream name, node id): a stream's draws never depend on
/// how many draws any other stream made.
class RngStreams {
 public:
  explicit RngStreams(std::uint64_t root_seed) : root_(root_seed) {}

  Rng stream(std::string_view name) const;
  Rng node_stream(std::string_view name, std::uint32_t node_id) const;

  std::uint64_t root_seed() const { return root_; }

 private:
  std::uint64_t root_;
};

}  // namespace opportune
