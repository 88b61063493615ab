#include "qnet/proactive.hpp"

#include <limits>
#include <vector>

#include "qnet/disjoint_set.hpp"

namespace qnet {

namespace {

struct Eligible {
  std::vector<NodeId> nodes;
  std::vector<std::int64_t> hcs;
  std::int64_t sum = 0;
};

Eligible eligible_neighbors(const QNetGraph& g, NodeId u) {
  Eligible e;
  for (const auto& a : g.neighbors(u)) {
    const auto hc = g.links()[a.link].hc;
    if (hc <= 0) continue;
    e.nodes.push_back(a.node);
    e.hcs.push_back(hc);
    e.sum += hc;
  }
  return e;
}

}  // namespace

std::optional<double> mean_hc(const QNetGraph& g, NodeId u) {
  const auto e = eligible_neighbors(g, u);
  if (e.nodes.empty()) return std::nullopt;
  return static_cast<double>(e.sum) / static_cast<double>(e.nodes.size());
}

double squared_deviation(double mean, std::int64_t hc) {
  const double d = mean - static_cast<double>(hc);
  return d * d;
}

std::optional<HcStats> hc_stats(const QNetGraph& g, NodeId u) {
  const auto e = eligible_neighbors(g, u);
  if (e.nodes.empty()) return std::nullopt;
  HcStats stats;
  stats.node = u;
  stats.mean = static_cast<double>(e.sum) / static_cast<double>(e.nodes.size());
  for (std::size_t i = 0; i < e.nodes.size(); ++i) stats.deviations[e.nodes[i]] = squared_deviation(stats.mean, e.hcs[i]);
  return stats;
}

std::optional<NodeId> select_proactive_partner(const QNetGraph& g, NodeId u, ChoiceSource& choice) {
  const auto e = eligible_neighbors(g, u);
  if (e.nodes.empty()) return std::nullopt;
  // k^2 * (mean - hc)^2 == (sum - k * hc)^2, which is exact in integers.
  const auto k = static_cast<std::int64_t>(e.nodes.size());
  auto best = std::numeric_limits<std::int64_t>::max();
  std::vector<NodeId> tied;
  for (std::size_t i = 0; i < e.nodes.size(); ++i) {
    const auto diff = e.sum - k * e.hcs[i];
    const auto scaled = diff * diff;
    if (scaled < best) {
      best = scaled;
      tied.clear();
    }
    if (scaled == best) tied.push_back(e.nodes[i]);
  }
  return pick_one(choice, u, tied);
}

EntanglementOverlay build_proactive_overlay(const QNetGraph& g, ChoiceSource& choice) {
  EntanglementOverlay o(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (const auto partner = select_proactive_partner(g, u, choice)) o.add(u, *partner);
  }
  return o;
}

EntanglementOverlay swap_closure(const EntanglementOverlay& o) {
  const auto n = o.node_count();
  DisjointSet sets(n);
  for (const auto& p : o.pairs()) sets.unite(p.lo, p.hi);

  std::vector<std::vector<NodeId>> members(n);
  for (NodeId u = 0; u < n; ++u) members[sets.find(u)].push_back(u);

  EntanglementOverlay closed(n);
  for (const auto& component : members) {
    for (std::size_t i = 0; i < component.size(); ++i) {
      for (std::size_t j = i + 1; j < component.size(); ++j) closed.add(component[i], component[j]);
    }
  }
  return closed;
}

}  // namespace qnet
