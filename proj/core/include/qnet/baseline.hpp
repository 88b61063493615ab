#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qnet/overlay.hpp"
#include "qnet/protocol.hpp"
#include "qnet/table.hpp"
#include "qnet/topology.hpp"

namespace qnet {

/// Cost of a reactive, request-driven setup: entangle every hop of the
/// physical route, then swap the chain end to end.
struct BaselineOutcome {
  std::size_t qents_generated = 0;
  std::size_t swaps = 0;
  std::size_t path_record_len = 0;  // nodes carried in the setup message
  std::vector<NodeId> path;
};

/// Minimum-hop path by BFS; among equal-length paths the one that is
/// lexicographically smallest by node id. Empty if target is unreachable.
std::vector<NodeId> shortest_physical_path(const QNetGraph& g, NodeId source, NodeId target);

/// Throws ValidationError if source == target or no path exists.
BaselineOutcome ietf_reactive_setup(const QNetGraph& g, NodeId source, NodeId target);

struct MethodCost {
  std::string method;  // "proactive" or "reactive"
  bool success = false;
  std::size_t qents = 0;
  std::size_t swaps = 0;
  std::size_t path_record_len = 0;
};

struct CostComparison {
  NodeId source = 0;
  NodeId target = 0;
  MethodCost proactive;
  MethodCost reactive;
};

/// Runs one proactive attempt on a copy of `o` and the reactive baseline for
/// the same endpoints. Neither input is modified.
CostComparison compare_costs(const QNetGraph& g, const EntanglementOverlay& o, NodeId source, NodeId target,
                             FallbackBudget budget, ChoiceSource& choice);

/// Columns method,source,target,qents,swaps,path_record_len; one row per method.
Table comparison_table(const CostComparison& c);

}  // namespace qnet
