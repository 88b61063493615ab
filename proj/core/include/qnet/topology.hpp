#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qnet/rng.hpp"
#include "qnet/types.hpp"

namespace qnet {

/// Physical link with its history count (HC): how many entangled qubits were
/// historically used over it.
struct PhysicalLink {
  NodeId u = 0;
  NodeId v = 0;
  std::int64_t hc = 0;

  friend bool operator==(const PhysicalLink&, const PhysicalLink&) = default;
};

/// Neighbor entry in a node's adjacency list.
struct Adjacent {
  NodeId node;
  std::size_t link;  // index into QNetGraph::links()
};

/// Undirected physical topology.
///
/// Links are kept normalized (u < v) and sorted lexicographically. Adjacency
/// lists are sorted by neighbor id. The structure is immutable except for HC
/// updates on existing links.
class QNetGraph {
 public:
  QNetGraph() = default;

  /// Throws ValidationError on self-loops, duplicates, out-of-range endpoints
  /// or negative HCs. Endpoint order within a link is not significant.
  QNetGraph(std::size_t n, std::vector<PhysicalLink> links);

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t link_count() const { return links_.size(); }
  std::span<const PhysicalLink> links() const { return links_; }
  std::span<const Adjacent> neighbors(NodeId u) const { return adjacency_.at(u); }

  bool adjacent(NodeId u, NodeId v) const { return find_link(u, v) != npos; }

  /// HC of link {u, v}. Throws std::out_of_range if there is no such link.
  std::int64_t hc(NodeId u, NodeId v) const;

  /// Adds `delta` to the HC of link {u, v}. The result must stay >= 0.
  void add_hc(NodeId u, NodeId v, std::int64_t delta);

  bool connected() const;

  friend bool operator==(const QNetGraph& a, const QNetGraph& b) { return a.links_ == b.links_ && a.node_count() == b.node_count(); }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t find_link(NodeId u, NodeId v) const;

  std::vector<PhysicalLink> links_;
  std::vector<std::vector<Adjacent>> adjacency_;
};

/// Parameters for random topology generation.
struct TopologyParams {
  std::size_t nodes = 10;
  double avg_degree = 3.0;
  std::int64_t hc_max = 15;
  /// Number of G(n, p) draws tried before giving up on connectivity.
  std::size_t max_attempts = 10000;
};

/// Draws a connected G(n, p) graph with p = avg_degree / (n - 1), resampling
/// until connected, then assigns each link an HC uniform on {0, ..., hc_max}.
///
/// Random draws: for every attempt, one Bernoulli per unordered pair in
/// lexicographic order; then one HC draw per link in link order.
///
/// Throws ValidationError for bad parameters and InfeasibleError when no
/// connected sample appears within `max_attempts`.
QNetGraph generate_graph(const TopologyParams& params, Rng& rng);

/// Number of physical links incident to u.
std::size_t degree(const QNetGraph& g, NodeId u);

/// Writes the canonical graph file: {"n": .., "edges": [{"u": .., "v": .., "hc": ..}, ..]}.
void save_graph(const QNetGraph& g, std::ostream& out);
std::string graph_to_string(const QNetGraph& g);

/// Parses a graph file. Throws ParseError (naming the field) on malformed
/// input and ValidationError on invariant violations.
QNetGraph load_graph(std::istream& in);
QNetGraph graph_from_string(const std::string& text);

}  // namespace qnet
