#include "qnet/rng.hpp"

#include <cassert>
#include <limits>

namespace qnet {

std::uint64_t Rng::below(std::uint64_t bound) {
  assert(bound > 0);
  // Reject the short tail so every residue is equally likely.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % bound;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  assert(lo <= hi);
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());  // full 64-bit range
  return lo + static_cast<std::int64_t>(below(span));
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

NodeId RandomChoice::choose(NodeId /*at*/, std::span<const NodeId> candidates) {
  return candidates[rng_.below(candidates.size())];
}

NodeId pick_one(ChoiceSource& source, NodeId at, std::span<const NodeId> candidates) {
  assert(!candidates.empty());
  if (candidates.size() == 1) return candidates.front();
  return source.choose(at, candidates);
}

}  // namespace qnet
