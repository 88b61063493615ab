#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "qnet/types.hpp"

namespace qnet {

/// Seeded random stream with platform-independent draws.
///
/// std::mt19937_64's output sequence is fixed by the standard, but the
/// standard distributions are not, so bounded integers and unit reals are
/// derived here directly from the raw 64-bit words.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

  /// Uniform real in [0, 1) with 53 bits of precision.
  double unit();

  bool bernoulli(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Source of the protocol's random tie-breaks.
///
/// Every randomized decision in the proactive and connection-setup logic goes
/// through this interface so tests can script the choices a worked example
/// depends on. Implementations are only consulted with two or more candidates.
class ChoiceSource {
 public:
  virtual ~ChoiceSource() = default;

  /// Picks one of `candidates` (sorted ascending, size >= 2) on behalf of `at`.
  virtual NodeId choose(NodeId at, std::span<const NodeId> candidates) = 0;
};

/// Uniform choice drawn from an Rng.
class RandomChoice final : public ChoiceSource {
 public:
  explicit RandomChoice(Rng& rng) : rng_(rng) {}

  NodeId choose(NodeId at, std::span<const NodeId> candidates) override;

 private:
  Rng& rng_;
};

/// Consults `source` only when there is an actual choice to make.
NodeId pick_one(ChoiceSource& source, NodeId at, std::span<const NodeId> candidates);

}  // namespace qnet
