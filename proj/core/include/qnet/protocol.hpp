#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qnet/overlay.hpp"
#include "qnet/rng.hpp"
#include "qnet/topology.hpp"

namespace qnet {

enum class Decision {
  kForward,            // to the max-entanglement-count neighbor
  kFallbackEntangled,  // cycle broken via a random unvisited entangled node (spends c1)
  kFallbackPhysical,   // cycle broken via a random physical neighbor plus a fresh QEnt (spends c2)
  kQent,               // direct QEnt generated on a physical link
  kSwap,               // entanglement swap during the final cascade
  kFail,
  kSuccess,
};

std::string_view to_string(Decision d);

/// Per-attempt cycle-breaking budgets.
struct FallbackBudget {
  std::size_t c1 = 0;  // random entangled node
  std::size_t c2 = 0;  // random physical neighbor

  /// c1 = c2 = n.
  static FallbackBudget for_nodes(std::size_t n) { return {n, n}; }
};

/// One in-flight connection-setup request.
///
/// `visited` is the route record piggybacked on the setup message. `chain` is
/// the path the final swap cascade walks; consecutive entries always share an
/// overlay pair.
struct SetupAttemptState {
  NodeId source = 0;
  NodeId target = 0;
  NodeId current = 0;
  std::vector<NodeId> visited;
  std::vector<NodeId> chain;
  FallbackBudget budget;

  static SetupAttemptState start(NodeId source, NodeId target, FallbackBudget budget);

  bool was_visited(NodeId u) const;
};

/// Result of one step of next-hop selection.
struct HopDecision {
  Decision kind = Decision::kFail;  // kForward, kFallbackEntangled, kFallbackPhysical or kFail
  NodeId to = 0;

  friend bool operator==(const HopDecision&, const HopDecision&) = default;
};

/// Chooses where the setup request goes next from `state.current`.
///
/// The entangled neighbor with the largest overlay degree is preferred (ties
/// through `choice`). If that node was already visited a cycle is detected:
/// while c1 lasts, a random unvisited entangled neighbor is taken instead;
/// after that, or when no such neighbor exists, a random unvisited physical
/// neighbor (any physical neighbor if all are visited) is taken while c2
/// lasts. With both budgets spent the attempt fails.
///
/// Decrements the spent counter in `state.budget`. A kFallbackPhysical
/// decision obliges the caller to generate the QEnt {current, to}.
HopDecision next_hop(SetupAttemptState& state, const QNetGraph& g, const EntanglementOverlay& o, ChoiceSource& choice);

struct TraceRecord {
  NodeId at = 0;
  Decision decision = Decision::kFail;
  std::optional<NodeId> to;
  std::size_t c1 = 0;
  std::size_t c2 = 0;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct CascadeResult {
  std::size_t swaps = 0;
  std::vector<NodePair> new_pairs;
  std::vector<TraceRecord> trace;
};

/// Entangles every chain node with the chain's last node, walking back from
/// the tail with one swap at each successor. Pairs already present cost
/// nothing. Throws std::invalid_argument if consecutive entries are not
/// overlay pairs.
CascadeResult swap_cascade(std::span<const NodeId> chain, EntanglementOverlay& o);

enum class AttemptStatus { kSuccess, kFailure };

struct AttemptOutcome {
  AttemptStatus status = AttemptStatus::kFailure;
  std::size_t hops = 0;
  std::size_t qents_generated = 0;
  std::size_t swaps = 0;
  std::vector<NodePair> new_pairs;         // overlay additions, in order
  std::vector<NodePair> generated_links;   // physical links that got a direct QEnt
  std::vector<NodeId> visited;             // route record; ends with the target on success
  std::vector<NodeId> chain;               // cascade chain on success
  std::vector<TraceRecord> trace;

  bool succeeded() const { return status == AttemptStatus::kSuccess; }
};

/// Runs one connection-setup attempt. Every overlay addition persists in `o`
/// whatever the outcome.
AttemptOutcome attempt_connection(const QNetGraph& g, EntanglementOverlay& o, NodeId source, NodeId target,
                                  FallbackBudget budget, ChoiceSource& choice);

struct ConnectionResult {
  bool success = false;
  std::size_t attempts_used = 0;
  std::size_t failures = 0;
  std::vector<AttemptOutcome> outcomes;
};

/// Up to `max_retries` attempts, each with a fresh route record and budget,
/// over the same, growing overlay. Stops at the first success. Throws
/// ValidationError if max_retries is 0.
ConnectionResult setup_connection(const QNetGraph& g, EntanglementOverlay& o, NodeId source, NodeId target,
                                  std::size_t max_retries, FallbackBudget budget, ChoiceSource& choice);

/// Adds one to the HC of every link on which the successful attempt generated
/// a direct QEnt. Throws ValidationError for unsuccessful results.
void record_data_transfer(QNetGraph& g, const ConnectionResult& result);

/// One JSON object per line: {"at", "decision", "to", "c1", "c2"}.
void write_trace(std::span<const TraceRecord> trace, std::ostream& out);

/// ConnectionResult as a single JSON document (one line, newline-terminated).
std::string connection_result_json(const ConnectionResult& result);

}  // namespace qnet
