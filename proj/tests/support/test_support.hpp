#pragma once

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qnet/overlay.hpp"
#include "qnet/rng.hpp"
#include "qnet/topology.hpp"

namespace qnet::testing {

// Labels in the worked example are 1-based (N1..N10); ids are 0-based.
constexpr NodeId N(int label) { return static_cast<NodeId>(label - 1); }

inline std::string example_graph_path() { return std::string(QNET_DATA_DIR) + "/ten_node_example.json"; }

inline QNetGraph load_example_graph() {
  std::ifstream in(example_graph_path());
  if (!in) throw std::runtime_error("missing fixture " + example_graph_path());
  return load_graph(in);
}

inline std::set<NodePair> pair_set(const EntanglementOverlay& o) {
  const auto p = o.pairs();
  return {p.begin(), p.end()};
}

inline std::set<NodePair> labelled_pairs(std::initializer_list<std::pair<int, int>> labels) {
  std::set<NodePair> out;
  for (auto [a, b] : labels) out.emplace(N(a), N(b));
  return out;
}

// Forces the choice made at specific nodes; the k-th time node `at` has to
// choose, the k-th scripted preference for `at` is used. Unscripted choices
// take the smallest candidate.
class ScriptedChoice final : public ChoiceSource {
 public:
  ScriptedChoice() = default;
  ScriptedChoice(std::initializer_list<std::pair<NodeId, NodeId>> script) {
    for (auto [at, pick] : script) script_[at].push_back(pick);
  }

  NodeId choose(NodeId at, std::span<const NodeId> candidates) override {
    ++calls_;
    auto it = script_.find(at);
    if (it == script_.end() || it->second.empty()) return candidates.front();
    const NodeId pick = it->second.front();
    it->second.pop_front();
    if (std::find(candidates.begin(), candidates.end(), pick) == candidates.end())
      throw std::logic_error("scripted choice " + std::to_string(pick) + " not among candidates at node " + std::to_string(at));
    return pick;
  }

  std::size_t calls() const { return calls_; }

 private:
  std::map<NodeId, std::deque<NodeId>> script_;
  std::size_t calls_ = 0;
};

// Closure oracle: flood fill from every node over the pair relation and pair
// it with everything it reaches. Quadratic per source, written without any
// union-find so it stays independent of swap_closure.
inline std::set<NodePair> brute_force_closure(std::size_t n, const std::set<NodePair>& pairs) {
  std::vector<std::vector<NodeId>> adj(n);
  for (const auto& p : pairs) {
    adj[p.lo].push_back(p.hi);
    adj[p.hi].push_back(p.lo);
  }
  std::set<NodePair> out;
  for (NodeId s = 0; s < n; ++s) {
    std::vector<char> seen(n, 0);
    std::vector<NodeId> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : adj[u]) {
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    for (NodeId t = 0; t < n; ++t) {
      if (t != s && seen[t]) out.emplace(s, t);
    }
  }
  return out;
}

inline EntanglementOverlay random_overlay(std::size_t n, double density, Rng& rng) {
  EntanglementOverlay o(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (rng.bernoulli(density)) o.add(u, v);
    }
  }
  return o;
}

// Reachability from node 0 by breadth-first search over the link list only.
inline bool reaches_all(const QNetGraph& g) {
  const auto n = g.node_count();
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& l : g.links()) {
      if (seen[l.u] != seen[l.v]) {
        seen[l.u] = seen[l.v] = 1;
        grew = true;
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

}  // namespace qnet::testing
