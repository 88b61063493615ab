#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qnet/types.hpp"

namespace qnet {

/// Symmetric relation "these two nodes share usable entanglement".
///
/// Pairs are persistent facts: swapping through a pair does not consume it.
/// Pairs need not be physical links. Adjacency lists are kept sorted.
class EntanglementOverlay {
 public:
  EntanglementOverlay() = default;
  explicit EntanglementOverlay(std::size_t n) : matrix_(n * n, 0), neighbors_(n) {}

  std::size_t node_count() const { return neighbors_.size(); }
  std::size_t pair_count() const { return pairs_; }
  bool empty() const { return pairs_ == 0; }

  bool contains(NodeId u, NodeId v) const {
    return u != v && u < node_count() && v < node_count() && matrix_[u * node_count() + v] != 0;
  }

  /// Inserts {u, v}. Returns true if the pair was new. Throws
  /// std::invalid_argument for self-pairs or out-of-range nodes.
  bool add(NodeId u, NodeId v);

  std::span<const NodeId> neighbors(NodeId u) const { return neighbors_.at(u); }

  /// Number of distinct nodes paired with u.
  std::size_t degree(NodeId u) const { return neighbors_.at(u).size(); }

  /// All pairs, sorted.
  std::vector<NodePair> pairs() const;

  friend bool operator==(const EntanglementOverlay& a, const EntanglementOverlay& b) { return a.matrix_ == b.matrix_; }

 private:
  std::vector<unsigned char> matrix_;
  std::vector<std::vector<NodeId>> neighbors_;
  std::size_t pairs_ = 0;
};

/// Writes {"pairs": [{"u": .., "v": ..}, ..]} with u < v, sorted.
void save_overlay(const EntanglementOverlay& o, std::ostream& out);
std::string overlay_to_string(const EntanglementOverlay& o);

/// Reads the pair file for an overlay over `n` nodes.
EntanglementOverlay load_overlay(std::istream& in, std::size_t n);

}  // namespace qnet
