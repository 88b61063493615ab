#include "qnet/protocol.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qnet/error.hpp"

namespace qnet {

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::kForward: return "forward";
    case Decision::kFallbackEntangled: return "fallback_ent";
    case Decision::kFallbackPhysical: return "fallback_phys";
    case Decision::kQent: return "qent";
    case Decision::kSwap: return "swap";
    case Decision::kFail: return "fail";
    case Decision::kSuccess: return "success";
  }
  return "unknown";
}

SetupAttemptState SetupAttemptState::start(NodeId source, NodeId target, FallbackBudget budget) {
  SetupAttemptState s;
  s.source = source;
  s.target = target;
  s.current = source;
  s.visited = {source};
  s.chain = {source};
  s.budget = budget;
  return s;
}

bool SetupAttemptState::was_visited(NodeId u) const {
  return std::find(visited.begin(), visited.end(), u) != visited.end();
}

HopDecision next_hop(SetupAttemptState& state, const QNetGraph& g, const EntanglementOverlay& o, ChoiceSource& choice) {
  const NodeId u = state.current;
  const auto entangled = o.neighbors(u);

  if (!entangled.empty()) {
    std::size_t best = 0;
    for (NodeId v : entangled) best = std::max(best, o.degree(v));
    std::vector<NodeId> top;
    bool any_unvisited = false;
    for (NodeId v : entangled) {
      if (o.degree(v) != best) continue;
      top.push_back(v);
      any_unvisited = any_unvisited || !state.was_visited(v);
    }
    // When every top candidate is visited the cycle is certain; no draw needed.
    if (any_unvisited) {
      const NodeId pick = pick_one(choice, u, top);
      if (!state.was_visited(pick)) return {Decision::kForward, pick};
    }
  }

  if (state.budget.c1 > 0) {
    std::vector<NodeId> fresh;
    for (NodeId v : entangled) {
      if (!state.was_visited(v)) fresh.push_back(v);
    }
    if (!fresh.empty()) {
      --state.budget.c1;
      return {Decision::kFallbackEntangled, pick_one(choice, u, fresh)};
    }
  }

  if (state.budget.c2 > 0 && !g.neighbors(u).empty()) {
    std::vector<NodeId> fresh;
    std::vector<NodeId> all;
    for (const auto& a : g.neighbors(u)) {
      all.push_back(a.node);
      if (!state.was_visited(a.node)) fresh.push_back(a.node);
    }
    --state.budget.c2;
    return {Decision::kFallbackPhysical, pick_one(choice, u, fresh.empty() ? all : fresh)};
  }

  return {Decision::kFail, u};
}

CascadeResult swap_cascade(std::span<const NodeId> chain, EntanglementOverlay& o) {
  for (std::size_t i = 1; i < chain.size(); ++i) {
    if (!o.contains(chain[i - 1], chain[i])) throw std::invalid_argument("swap_cascade: chain link is not an overlay pair");
  }
  CascadeResult result;
  if (chain.size() < 3) return result;
  const NodeId tail = chain.back();
  for (std::size_t i = chain.size() - 2; i-- > 0;) {
    const NodeId head = chain[i];
    if (o.contains(head, tail)) continue;
    // {head, chain[i+1]} and {chain[i+1], tail} exist, so the swap at chain[i+1] yields {head, tail}.
    o.add(head, tail);
    ++result.swaps;
    result.new_pairs.emplace_back(head, tail);
    result.trace.push_back({chain[i + 1], Decision::kSwap, head, 0, 0});
  }
  return result;
}

namespace {

// Appends v (reached from the chain tail over an overlay pair), cutting the
// chain back to its earliest node that is v itself or already paired with v.
void extend_chain(std::vector<NodeId>& chain, NodeId v, const EntanglementOverlay& o) {
  for (std::size_t j = 0; j < chain.size(); ++j) {
    if (chain[j] == v) {
      chain.resize(j + 1);
      return;
    }
    if (o.contains(chain[j], v)) {
      chain.resize(j + 1);
      chain.push_back(v);
      return;
    }
  }
  assert(false && "chain tail must be paired with the appended node");
}

}  // namespace

AttemptOutcome attempt_connection(const QNetGraph& g, EntanglementOverlay& o, NodeId source, NodeId target,
                                  FallbackBudget budget, ChoiceSource& choice) {
  AttemptOutcome out;
  auto state = SetupAttemptState::start(source, target, budget);
  if (source == target) {
    out.status = AttemptStatus::kSuccess;
    out.visited = state.visited;
    out.chain = state.chain;
    return out;
  }

  auto record = [&](NodeId at, Decision d, std::optional<NodeId> to) {
    out.trace.push_back({at, d, to, state.budget.c1, state.budget.c2});
  };
  auto generate = [&](NodeId a, NodeId b) {
    if (!o.add(a, b)) return;
    ++out.qents_generated;
    out.new_pairs.emplace_back(a, b);
    out.generated_links.emplace_back(a, b);
    record(a, Decision::kQent, b);
  };
  auto finish = [&] {
    extend_chain(state.chain, target, o);
    auto cascade = swap_cascade(state.chain, o);
    out.swaps = cascade.swaps;
    out.new_pairs.insert(out.new_pairs.end(), cascade.new_pairs.begin(), cascade.new_pairs.end());
    for (auto& r : cascade.trace) {
      r.c1 = state.budget.c1;
      r.c2 = state.budget.c2;
      out.trace.push_back(r);
    }
    state.visited.push_back(target);
    ++out.hops;
    out.status = AttemptStatus::kSuccess;
    record(target, Decision::kSuccess, std::nullopt);
  };

  // Forward moves grow the visited set; fallbacks spend a counter.
  const std::size_t step_limit = g.node_count() + budget.c1 + budget.c2 + 1;
  for (std::size_t step = 0; step <= step_limit; ++step) {
    const NodeId u = state.current;
    if (o.contains(u, target)) {
      finish();
      break;
    }
    if (g.adjacent(u, target)) {
      generate(u, target);
      finish();
      break;
    }
    const auto hop = next_hop(state, g, o, choice);
    if (hop.kind == Decision::kFail) {
      record(u, Decision::kFail, std::nullopt);
      out.status = AttemptStatus::kFailure;
      break;
    }
    record(u, hop.kind, hop.to);
    if (hop.kind == Decision::kFallbackPhysical) generate(u, hop.to);
    extend_chain(state.chain, hop.to, o);
    state.visited.push_back(hop.to);
    state.current = hop.to;
    ++out.hops;
    assert(step < step_limit && "attempt exceeded its step bound");
  }
  out.visited = std::move(state.visited);
  if (out.succeeded()) out.chain = std::move(state.chain);
  return out;
}

ConnectionResult setup_connection(const QNetGraph& g, EntanglementOverlay& o, NodeId source, NodeId target,
                                  std::size_t max_retries, FallbackBudget budget, ChoiceSource& choice) {
  if (max_retries == 0) throw ValidationError("retries must be at least 1");
  ConnectionResult result;
  for (std::size_t i = 0; i < max_retries && !result.success; ++i) {
    result.outcomes.push_back(attempt_connection(g, o, source, target, budget, choice));
    ++result.attempts_used;
    result.success = result.outcomes.back().succeeded();
  }
  result.failures = result.attempts_used - (result.success ? 1 : 0);
  return result;
}

void record_data_transfer(QNetGraph& g, const ConnectionResult& result) {
  if (!result.success || result.outcomes.empty()) throw ValidationError("data transfer needs a successful connection");
  for (const auto& link : result.outcomes.back().generated_links) g.add_hc(link.lo, link.hi, 1);
}

namespace {

nlohmann::ordered_json record_json(const TraceRecord& r) {
  nlohmann::ordered_json j;
  j["at"] = r.at;
  j["decision"] = std::string(to_string(r.decision));
  j["to"] = r.to ? nlohmann::ordered_json(*r.to) : nlohmann::ordered_json(nullptr);
  j["c1"] = r.c1;
  j["c2"] = r.c2;
  return j;
}

nlohmann::ordered_json pairs_json(const std::vector<NodePair>& pairs) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& p : pairs) arr.push_back({p.lo, p.hi});
  return arr;
}

}  // namespace

void write_trace(std::span<const TraceRecord> trace, std::ostream& out) {
  for (const auto& r : trace) out << record_json(r).dump() << '\n';
}

std::string connection_result_json(const ConnectionResult& result) {
  nlohmann::ordered_json j;
  j["success"] = result.success;
  j["attempts_used"] = result.attempts_used;
  j["failures"] = result.failures;
  auto outcomes = nlohmann::ordered_json::array();
  for (const auto& a : result.outcomes) {
    nlohmann::ordered_json o;
    o["status"] = a.succeeded() ? "success" : "failure";
    o["hops"] = a.hops;
    o["qents_generated"] = a.qents_generated;
    o["swaps"] = a.swaps;
    o["new_pairs"] = pairs_json(a.new_pairs);
    o["visited"] = a.visited;
    auto trace = nlohmann::ordered_json::array();
    for (const auto& r : a.trace) trace.push_back(record_json(r));
    o["trace"] = std::move(trace);
    outcomes.push_back(std::move(o));
  }
  j["outcomes"] = std::move(outcomes);
  return j.dump() + "\n";
}

}  // namespace qnet
