#pragma once

#include <compare>
#include <cstdint>
#include <utility>

namespace qnet {

/// Dense node index in [0, n).
using NodeId = std::uint32_t;

/// Unordered node pair stored with lo < hi.
struct NodePair {
  NodeId lo = 0;
  NodeId hi = 0;

  NodePair() = default;
  NodePair(NodeId a, NodeId b) : lo(a < b ? a : b), hi(a < b ? b : a) {}

  friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

}  // namespace qnet
