#include "qnet/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>
#include <tuple>

#include "qnet/error.hpp"
#include "qnet/proactive.hpp"

namespace qnet {

namespace {

ReplicateResult run_connections(const QNetGraph& g, EntanglementOverlay& o, const ConfigPoint& point,
                                std::size_t max_retries, FallbackBudget budget, Rng& rng) {
  ReplicateResult out;
  out.reserve(point.connections);
  RandomChoice choice(rng);
  const auto n = g.node_count();
  for (std::size_t c = 0; c < point.connections; ++c) {
    const auto source = static_cast<NodeId>(rng.below(n));
    auto target = static_cast<NodeId>(rng.below(n - 1));
    if (target >= source) ++target;
    const auto result = setup_connection(g, o, source, target, max_retries, budget, choice);
    out.push_back({source, target, result.attempts_used, result.failures, result.success});
  }
  return out;
}

template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

RawCell aggregate(std::span<const ReplicateResult> replicates, std::size_t first_k) {
  RawCell cell;
  cell.replicates = replicates.size();
  for (const auto& rep : replicates) {
    for (std::size_t i = 0; i < first_k && i < rep.size(); ++i) {
      cell.attempts += rep[i].attempts;
      cell.failed_attempts += rep[i].failures;
      ++cell.requests;
      if (!rep[i].success) ++cell.failed_requests;
    }
  }
  return cell;
}

double ratio(std::size_t num, std::size_t den) { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }

}  // namespace

std::vector<ReplicateResult> run_replicate_retry_sweep(const ConfigPoint& point, std::span<const std::size_t> retries,
                                                       std::uint64_t seed) {
  Rng rng(seed);
  const TopologyParams params{point.nodes, point.avg_degree, point.hc_max, point.max_topology_attempts};
  const auto g = generate_graph(params, rng);
  RandomChoice choice(rng);
  const auto overlay = swap_closure(build_proactive_overlay(g, choice));
  const auto budget = point.budget();

  std::vector<ReplicateResult> out;
  out.reserve(retries.size());
  for (const auto r : retries) {
    Rng branch = rng;
    EntanglementOverlay o = overlay;
    out.push_back(run_connections(g, o, point, r, budget, branch));
  }
  return out;
}

ReplicateResult run_replicate(const ConfigPoint& point, std::uint64_t seed) {
  const std::size_t retries[] = {point.max_retries};
  return std::move(run_replicate_retry_sweep(point, retries, seed).front());
}

void ExperimentConfig::validate() const {
  if (nodes.empty()) throw ValidationError("nodes list is empty");
  if (retries.empty()) throw ValidationError("retries list is empty");
  if (replicates == 0) throw ValidationError("replicates must be at least 1");
  if (std::find(retries.begin(), retries.end(), std::size_t{0}) != retries.end())
    throw ValidationError("retries must be at least 1");
  if (std::find_if(nodes.begin(), nodes.end(), [](std::size_t n) { return n < 2; }) != nodes.end())
    throw ValidationError("nodes must be at least 2");
}

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double population_variance(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  const double m = mean(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - m) * (x - m);
  return acc / static_cast<double>(xs.size());
}

MetricsTable summarize(const std::string& experiment, std::span<const RawCell> cells) {
  using Key = std::tuple<std::string, std::size_t, double, std::size_t>;
  std::map<Key, std::vector<double>> groups;
  MetricsTable table;
  for (const auto& c : cells) {
    MetricsRow row;
    row.experiment = experiment;
    row.label = c.label;
    row.nodes = c.nodes;
    row.avg_degree = c.avg_degree;
    row.connections = c.connections;
    row.retries = c.retries;
    row.replicates = c.replicates;
    row.failure_rate = ratio(c.failed_attempts, c.attempts);
    row.final_failure_fraction = ratio(c.failed_requests, c.requests);
    groups[Key{c.label, c.nodes, c.avg_degree, c.connections}].push_back(row.failure_rate);
    table.rows.push_back(std::move(row));
  }
  for (auto& row : table.rows) row.variance = population_variance(groups[Key{row.label, row.nodes, row.avg_degree, row.connections}]);
  return table;
}

Table MetricsTable::to_table() const {
  Table t({"experiment", "nodes", "avg_degree", "connections", "retries", "replicates", "failure_rate",
           "final_failure_fraction", "variance"});
  for (const auto& r : rows) {
    t.add_row({r.experiment, static_cast<long long>(r.nodes), r.avg_degree, static_cast<long long>(r.connections),
               static_cast<long long>(r.retries), static_cast<long long>(r.replicates), r.failure_rate,
               r.final_failure_fraction, r.variance});
  }
  return t;
}

std::vector<std::vector<ReplicateResult>> run_replicates(const ConfigPoint& point, std::span<const std::size_t> retries,
                                                         std::size_t replicates, std::uint64_t base_seed,
                                                         std::size_t threads) {
  std::vector<std::vector<ReplicateResult>> by_replicate(replicates);
  parallel_for(replicates, threads, [&](std::size_t i) {
    by_replicate[i] = run_replicate_retry_sweep(point, retries, base_seed + i);
  });
  std::vector<std::vector<ReplicateResult>> out(retries.size(), std::vector<ReplicateResult>(replicates));
  for (std::size_t i = 0; i < replicates; ++i) {
    for (std::size_t r = 0; r < retries.size(); ++r) out[r][i] = std::move(by_replicate[i][r]);
  }
  return out;
}

MetricsTable run_single_connection_sweep(const ExperimentConfig& config) {
  config.validate();
  std::vector<RawCell> cells;
  for (const auto n : config.nodes) {
    ConfigPoint point{n, config.avg_degree, config.hc_max, 1, 1, config.c1, config.c2};
    const auto runs = run_replicates(point, config.retries, config.replicates, config.base_seed, config.threads);
    for (std::size_t r = 0; r < config.retries.size(); ++r) {
      auto cell = aggregate(runs[r], 1);
      cell.nodes = n;
      cell.avg_degree = config.avg_degree;
      cell.connections = 1;
      cell.retries = config.retries[r];
      cells.push_back(cell);
    }
  }
  return summarize("fig3", cells);
}

MetricsTable run_multi_connection_sweep(const ExperimentConfig& config) {
  config.validate();
  if (config.connections == 0) throw ValidationError("connections must be at least 1");
  const auto n = config.nodes.front();
  ConfigPoint point{n, config.avg_degree, config.hc_max, config.connections, 1, config.c1, config.c2};
  const auto runs = run_replicates(point, config.retries, config.replicates, config.base_seed, config.threads);
  std::vector<RawCell> cells;
  for (std::size_t k = 1; k <= config.connections; ++k) {
    for (std::size_t r = 0; r < config.retries.size(); ++r) {
      auto cell = aggregate(runs[r], k);
      cell.nodes = n;
      cell.avg_degree = config.avg_degree;
      cell.connections = k;
      cell.retries = config.retries[r];
      cells.push_back(cell);
    }
  }
  return summarize("fig4", cells);
}

MetricsTable variance_by_connections(const MetricsTable& multi) {
  MetricsTable out;
  std::map<std::tuple<std::string, std::size_t, double, std::size_t>, std::size_t> index;
  std::vector<std::vector<const MetricsRow*>> groups;
  for (const auto& row : multi.rows) {
    const auto key = std::make_tuple(row.label, row.nodes, row.avg_degree, row.connections);
    auto [it, inserted] = index.emplace(key, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(&row);
  }
  for (const auto& group : groups) {
    std::vector<double> rates;
    std::vector<double> finals;
    std::size_t max_retries = 0;
    for (const auto* r : group) {
      rates.push_back(r->failure_rate);
      finals.push_back(r->final_failure_fraction);
      max_retries = std::max(max_retries, r->retries);
    }
    MetricsRow row = *group.front();
    row.experiment = "fig5";
    row.retries = max_retries;
    row.failure_rate = mean(rates);
    row.final_failure_fraction = mean(finals);
    row.variance = population_variance(rates);
    out.rows.push_back(std::move(row));
  }
  return out;
}

MetricsTable run_sparsity_comparison(const ExperimentConfig& config) {
  config.validate();
  if (config.connections == 0) throw ValidationError("connections must be at least 1");
  const auto n = config.nodes.front();
  std::vector<RawCell> cells;
  for (const auto& [label, degree] : {std::pair{"normal", config.avg_degree}, std::pair{"sparse", config.avg_degree / 2}}) {
    ConfigPoint point{n, degree, config.hc_max, config.connections, 1, config.c1, config.c2};
    const auto runs = run_replicates(point, config.retries, config.replicates, config.base_seed, config.threads);
    for (std::size_t r = 0; r < config.retries.size(); ++r) {
      auto cell = aggregate(runs[r], config.connections);
      cell.label = label;
      cell.nodes = n;
      cell.avg_degree = degree;
      cell.connections = config.connections;
      cell.retries = config.retries[r];
      cells.push_back(cell);
    }
  }
  return summarize("fig6", cells);
}

}  // namespace qnet
