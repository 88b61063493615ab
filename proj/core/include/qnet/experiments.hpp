#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qnet/protocol.hpp"
#include "qnet/table.hpp"
#include "qnet/topology.hpp"

namespace qnet {

/// One point of a sweep: everything needed to run a replicate.
struct ConfigPoint {
  std::size_t nodes = 20;
  double avg_degree = 3.0;
  std::int64_t hc_max = 15;
  std::size_t connections = 1;
  std::size_t max_retries = 5;
  std::optional<std::size_t> c1;  // defaults to nodes
  std::optional<std::size_t> c2;  // defaults to nodes
  std::size_t max_topology_attempts = 10000;

  FallbackBudget budget() const { return {c1.value_or(nodes), c2.value_or(nodes)}; }
};

struct ConnectionRecord {
  NodeId source = 0;
  NodeId target = 0;
  std::size_t attempts = 0;
  std::size_t failures = 0;
  bool success = false;
};

using ReplicateResult = std::vector<ConnectionRecord>;

/// One replicate: generate a graph, build the proactive overlay and its swap
/// closure, then issue `connections` sequential requests between uniformly
/// drawn distinct endpoints on the persisting overlay.
///
/// All randomness comes from one stream seeded with `seed`, consumed in this
/// order: graph, HCs, overlay tie-breaks, then per connection the endpoint
/// draws followed by the protocol's draws. Throws InfeasibleError when the
/// topology cannot be made connected.
ReplicateResult run_replicate(const ConfigPoint& point, std::uint64_t seed);

/// run_replicate for several max-retry values sharing one seed. Result i is
/// identical to run_replicate with max_retries = retries[i]; the graph and
/// overlay are built once.
std::vector<ReplicateResult> run_replicate_retry_sweep(const ConfigPoint& point, std::span<const std::size_t> retries,
                                                       std::uint64_t seed);

struct ExperimentConfig {
  std::vector<std::size_t> nodes{20};
  std::vector<std::size_t> retries{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::size_t connections = 1;
  double avg_degree = 3.0;
  std::int64_t hc_max = 15;
  std::size_t replicates = 100;
  std::uint64_t base_seed = 1;
  std::optional<std::size_t> c1;  // per point, defaults to the node count
  std::optional<std::size_t> c2;
  std::size_t threads = 0;  // 0: hardware concurrency

  /// Throws ValidationError on empty lists, zero replicates or zero retries.
  void validate() const;
};

/// Aggregated counts for one table cell.
struct RawCell {
  std::string label;  // free-form arm name; rows with different labels never share a variance group
  std::size_t nodes = 0;
  double avg_degree = 0.0;
  std::size_t connections = 0;
  std::size_t retries = 0;
  std::size_t replicates = 0;
  std::size_t attempts = 0;
  std::size_t failed_attempts = 0;
  std::size_t requests = 0;          // connection requests issued
  std::size_t failed_requests = 0;   // requests that never succeeded
};

struct MetricsRow {
  std::string experiment;
  std::string label;
  std::size_t nodes = 0;
  double avg_degree = 0.0;
  std::size_t connections = 0;
  std::size_t retries = 0;
  std::size_t replicates = 0;
  double failure_rate = 0.0;            // failed attempts / attempts
  double final_failure_fraction = 0.0;  // failed requests / requests
  double variance = 0.0;                // of failure_rate across the retry axis of this row's group

  double success_rate() const { return 1.0 - final_failure_fraction; }
};

struct MetricsTable {
  std::vector<MetricsRow> rows;

  /// Columns experiment,nodes,avg_degree,connections,retries,replicates,
  /// failure_rate,final_failure_fraction,variance.
  Table to_table() const;
};

double mean(std::span<const double> xs);
double population_variance(std::span<const double> xs);

/// Turns raw cells into rows. Cells sharing (label, nodes, avg_degree,
/// connections) form one retry-axis group; each row carries the population
/// variance of failure_rate over its group. Row order follows cell order.
MetricsTable summarize(const std::string& experiment, std::span<const RawCell> cells);

/// Runs `replicates` replicates with seeds base_seed + i for every value in
/// `retries`. Output is indexed [retry][replicate] regardless of threading.
std::vector<std::vector<ReplicateResult>> run_replicates(const ConfigPoint& point, std::span<const std::size_t> retries,
                                                         std::size_t replicates, std::uint64_t base_seed,
                                                         std::size_t threads);

/// Single-connection failure surface over nodes x retries.
MetricsTable run_single_connection_sweep(const ExperimentConfig& config);

/// Sequential connections on a fixed network size (config.nodes.front()).
/// Row (k, R) aggregates the first k connections of each replicate run with
/// max retries R, for k = 1..config.connections.
MetricsTable run_multi_connection_sweep(const ExperimentConfig& config);

/// Collapses a multi-connection table to one row per connection count:
/// failure_rate and final_failure_fraction averaged over the retry axis,
/// variance as in the source rows, retries set to the largest retry value.
MetricsTable variance_by_connections(const MetricsTable& multi);

/// Normal arm at config.avg_degree against a sparse arm at half of it, on
/// config.nodes.front() nodes with config.connections connections. Arms use
/// identical seeds. Labels are "normal" and "sparse".
MetricsTable run_sparsity_comparison(const ExperimentConfig& config);

}  // namespace qnet
