#include "qnet/baseline.hpp"

#include <algorithm>
#include <limits>

#include "qnet/error.hpp"

namespace qnet {

std::vector<NodeId> shortest_physical_path(const QNetGraph& g, NodeId source, NodeId target) {
  const auto n = g.node_count();
  if (source >= n || target >= n) throw ValidationError("endpoint outside the graph");
  if (source == target) return {source};

  // Distances from the target let us walk forward from the source, always
  // stepping to the smallest-id neighbor that is one hop closer.
  constexpr auto kUnreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(n, kUnreached);
  std::vector<NodeId> queue{target};
  dist[target] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    for (const auto& a : g.neighbors(u)) {
      if (dist[a.node] == kUnreached) {
        dist[a.node] = dist[u] + 1;
        queue.push_back(a.node);
      }
    }
  }
  if (dist[source] == kUnreached) return {};

  std::vector<NodeId> path{source};
  for (NodeId u = source; u != target;) {
    for (const auto& a : g.neighbors(u)) {  // ascending id
      if (dist[a.node] + 1 == dist[u]) {
        u = a.node;
        break;
      }
    }
    path.push_back(u);
  }
  return path;
}

BaselineOutcome ietf_reactive_setup(const QNetGraph& g, NodeId source, NodeId target) {
  if (source == target) throw ValidationError("reactive setup needs distinct endpoints");
  BaselineOutcome out;
  out.path = shortest_physical_path(g, source, target);
  if (out.path.empty()) throw ValidationError("target unreachable from source");
  const auto hops = out.path.size() - 1;
  out.qents_generated = hops;
  out.swaps = hops - 1;
  out.path_record_len = out.path.size();
  return out;
}

CostComparison compare_costs(const QNetGraph& g, const EntanglementOverlay& o, NodeId source, NodeId target,
                             FallbackBudget budget, ChoiceSource& choice) {
  CostComparison c;
  c.source = source;
  c.target = target;

  EntanglementOverlay scratch = o;
  const auto attempt = attempt_connection(g, scratch, source, target, budget, choice);
  c.proactive = {"proactive", attempt.succeeded(), attempt.qents_generated, attempt.swaps, attempt.visited.size()};

  if (source == target) {
    c.reactive = {"reactive", true, 0, 0, 1};
  } else {
    const auto base = ietf_reactive_setup(g, source, target);
    c.reactive = {"reactive", true, base.qents_generated, base.swaps, base.path_record_len};
  }
  return c;
}

Table comparison_table(const CostComparison& c) {
  Table t({"method", "source", "target", "qents", "swaps", "path_record_len"});
  for (const auto* m : {&c.proactive, &c.reactive}) {
    t.add_row({m->method, static_cast<long long>(c.source), static_cast<long long>(c.target),
               static_cast<long long>(m->qents), static_cast<long long>(m->swaps),
               static_cast<long long>(m->path_record_len)});
  }
  return t;
}

}  // namespace qnet
