#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "qnet/baseline.hpp"
#include "qnet/error.hpp"
#include "qnet/experiments.hpp"
#include "qnet/proactive.hpp"
#include "qnet/protocol.hpp"
#include "qnet/topology.hpp"

namespace qnet::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::size_t nodes = 10;
  double avg_degree = 3.0;
  std::int64_t hc_max = 15;
  std::uint64_t seed = 1;
  std::size_t retries = 5;
  std::optional<std::size_t> c1;
  std::optional<std::size_t> c2;
  std::size_t connections = 50;
  std::size_t replicates = 100;
  std::size_t threads = 0;
  std::string input;
  std::string overlay;
  std::string output;
  std::string trace;
  std::string format = "csv";
  std::string experiment;
  NodeId source = 0;
  NodeId target = 0;
};

// Writes through a sibling temp file so a failed run never leaves partial output.
void write_atomically(const std::string& path, const std::string& content) {
  const fs::path final_path(path);
  fs::path tmp = final_path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ValidationError("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) throw ValidationError("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, final_path, ec);
  if (ec) {
    fs::remove(tmp);
    throw ValidationError("cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
  }
}

void emit(const Options& opt, const std::string& content, std::ostream& out) {
  if (opt.output.empty() || opt.output == "-") {
    out << content;
  } else {
    write_atomically(opt.output, content);
  }
}

QNetGraph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open graph file " + path);
  return load_graph(in);
}

const CLI::Validator kAtLeastOne(
    [](std::string& v) {
      long long x = 0;
      return CLI::detail::lexical_cast(v, x) && x >= 1 ? std::string() : "must be an integer of at least 1";
    },
    "INT>=1", "AtLeastOne");

TableFormat table_format(const std::string& name) { return name == "json" ? TableFormat::kJson : TableFormat::kCsv; }

FallbackBudget budget_for(const Options& opt, std::size_t n) {
  return {opt.c1.value_or(n), opt.c2.value_or(n)};
}

void check_endpoint(NodeId u, const QNetGraph& g, const char* name) {
  if (u >= g.node_count())
    throw ValidationError(std::string(name) + " " + std::to_string(u) + " is outside [0, " + std::to_string(g.node_count()) + ")");
}

// The overlay a connection starts from: a supplied file, or the proactive
// build plus swap closure drawn from `rng`.
EntanglementOverlay starting_overlay(const Options& opt, const QNetGraph& g, Rng& rng) {
  if (!opt.overlay.empty()) {
    std::ifstream in(opt.overlay);
    if (!in) throw ValidationError("cannot open overlay file " + opt.overlay);
    return load_overlay(in, g.node_count());
  }
  RandomChoice choice(rng);
  return swap_closure(build_proactive_overlay(g, choice));
}

int cmd_generate(const Options& opt, std::ostream& out) {
  Rng rng(opt.seed);
  const auto g = generate_graph({opt.nodes, opt.avg_degree, opt.hc_max}, rng);
  emit(opt, graph_to_string(g), out);
  return 0;
}

int cmd_proactive(const Options& opt, std::ostream& out) {
  const auto g = read_graph(opt.input);
  Rng rng(opt.seed);
  RandomChoice choice(rng);
  const auto initial = build_proactive_overlay(g, choice);
  const auto closed = swap_closure(initial);
  if (opt.output.empty() || opt.output == "-") {
    out << overlay_to_string(initial) << overlay_to_string(closed);
  } else {
    write_atomically(opt.output + ".initial.json", overlay_to_string(initial));
    write_atomically(opt.output + ".closed.json", overlay_to_string(closed));
  }
  return 0;
}

int cmd_connect(const Options& opt, std::ostream& out) {
  const auto g = read_graph(opt.input);
  check_endpoint(opt.source, g, "source");
  check_endpoint(opt.target, g, "target");
  Rng rng(opt.seed);
  auto o = starting_overlay(opt, g, rng);
  RandomChoice choice(rng);
  const auto result = setup_connection(g, o, opt.source, opt.target, opt.retries, budget_for(opt, g.node_count()), choice);
  if (!opt.trace.empty()) {
    std::ostringstream trace;
    for (const auto& attempt : result.outcomes) write_trace(attempt.trace, trace);
    write_atomically(opt.trace, trace.str());
  }
  emit(opt, connection_result_json(result), out);
  return 0;
}

int cmd_compare(const Options& opt, std::ostream& out) {
  const auto g = read_graph(opt.input);
  check_endpoint(opt.source, g, "source");
  check_endpoint(opt.target, g, "target");
  Rng rng(opt.seed);
  const auto o = starting_overlay(opt, g, rng);
  RandomChoice choice(rng);
  const auto cmp = compare_costs(g, o, opt.source, opt.target, budget_for(opt, g.node_count()), choice);
  emit(opt, comparison_table(cmp).to_string(table_format(opt.format)), out);
  return 0;
}

int cmd_experiment(const Options& opt, const CLI::App& sub, std::ostream& out) {
  auto given = [&](const char* flag) { return sub.count(flag) > 0; };

  ExperimentConfig config;
  config.avg_degree = opt.avg_degree;
  config.hc_max = opt.hc_max;
  config.replicates = opt.replicates;
  config.base_seed = opt.seed;
  config.threads = opt.threads;
  config.connections = opt.connections;
  const std::size_t max_retries = given("--retries") ? opt.retries : 10;
  config.retries.clear();
  for (std::size_t r = 1; r <= max_retries; ++r) config.retries.push_back(r);
  config.c1 = opt.c1;
  config.c2 = opt.c2;

  MetricsTable table;
  if (opt.experiment == "fig3") {
    config.nodes = given("--nodes") ? std::vector<std::size_t>{opt.nodes}
                                    : std::vector<std::size_t>{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
    table = run_single_connection_sweep(config);
  } else if (opt.experiment == "fig4" || opt.experiment == "fig5") {
    config.nodes = {given("--nodes") ? opt.nodes : 20};
    table = run_multi_connection_sweep(config);
    if (opt.experiment == "fig5") table = variance_by_connections(table);
  } else {
    config.nodes = {given("--nodes") ? opt.nodes : 100};
    if (!given("--avg-degree")) config.avg_degree = 10.0;
    table = run_sparsity_comparison(config);
  }

  Options target = opt;
  if (target.output.empty()) target.output = opt.experiment + (opt.format == "json" ? ".json" : ".csv");
  emit(target, table.to_table().to_string(table_format(opt.format)), out);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proactive entanglement distribution and connection-setup simulator", "qnetsim"};
  app.require_subcommand(1);
  Options opt;

  auto add_seed = [&](CLI::App* s) { s->add_option("--seed", opt.seed, "Random seed")->capture_default_str(); };
  auto add_output = [&](CLI::App* s, const char* help) { s->add_option("--output,-o", opt.output, help); };
  auto add_input = [&](CLI::App* s) { s->add_option("--input,-i", opt.input, "Graph file")->required(); };
  auto add_counters = [&](CLI::App* s) {
    s->add_option("--c1", opt.c1, "Random-entangled fallback budget (default: node count)");
    s->add_option("--c2", opt.c2, "Random-neighbor fallback budget (default: node count)");
  };
  auto add_endpoints = [&](CLI::App* s) {
    s->add_option("--source", opt.source, "Source node")->required();
    s->add_option("--target", opt.target, "Target node")->required();
    s->add_option("--overlay", opt.overlay, "Start from this overlay file instead of a fresh proactive build");
  };
  auto add_format = [&](CLI::App* s) {
    s->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  };

  auto* generate = app.add_subcommand("generate", "Generate a random connected topology");
  generate->add_option("--nodes", opt.nodes, "Node count")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20))->capture_default_str();
  generate->add_option("--avg-degree", opt.avg_degree, "Average node degree")->capture_default_str();
  generate->add_option("--hc-max", opt.hc_max, "Largest initial history count")->check(CLI::NonNegativeNumber)->capture_default_str();
  add_seed(generate);
  add_output(generate, "Graph file to write (default: stdout)");

  auto* proactive = app.add_subcommand("proactive", "Build the proactive overlay and its swap closure");
  add_input(proactive);
  add_seed(proactive);
  add_output(proactive, "Output prefix; writes <prefix>.initial.json and <prefix>.closed.json");

  auto* connect = app.add_subcommand("connect", "Set up one connection and print the result as JSON");
  add_input(connect);
  add_endpoints(connect);
  connect->add_option("--retries", opt.retries, "Maximum attempts")->check(kAtLeastOne)->capture_default_str();
  add_counters(connect);
  add_seed(connect);
  connect->add_option("--trace", opt.trace, "Write per-decision trace as JSON lines");
  add_output(connect, "Result file (default: stdout)");

  auto* compare = app.add_subcommand("compare", "Compare proactive and reactive setup cost");
  add_input(compare);
  add_endpoints(compare);
  add_counters(compare);
  add_seed(compare);
  add_format(compare);
  add_output(compare, "Comparison file (default: stdout)");

  auto* experiment = app.add_subcommand("experiment", "Run a failure-rate sweep");
  experiment->add_option("name", opt.experiment, "fig3 | fig4 | fig5 | fig6")
      ->required()
      ->check(CLI::IsMember({"fig3", "fig4", "fig5", "fig6"}));
  experiment->add_option("--nodes", opt.nodes, "Network size (fig3: single size instead of 10..100)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  experiment->add_option("--avg-degree", opt.avg_degree, "Average node degree (fig6: normal arm, default 10)");
  experiment->add_option("--hc-max", opt.hc_max, "Largest initial history count")->check(CLI::NonNegativeNumber);
  experiment->add_option("--retries", opt.retries, "Sweep retries 1..N (default 10)")->check(kAtLeastOne);
  experiment->add_option("--connections", opt.connections, "Sequential connections per replicate")
      ->check(kAtLeastOne)
      ->capture_default_str();
  experiment->add_option("--replicates", opt.replicates, "Replicates per point")->check(kAtLeastOne)->capture_default_str();
  experiment->add_option("--threads", opt.threads, "Worker threads (0: all cores)");
  add_counters(experiment);
  add_seed(experiment);
  add_format(experiment);
  add_output(experiment, "Metrics file (default: <name>.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*generate) return cmd_generate(opt, out);
    if (*proactive) return cmd_proactive(opt, out);
    if (*connect) return cmd_connect(opt, out);
    if (*compare) return cmd_compare(opt, out);
    if (*experiment) return cmd_experiment(opt, *experiment, out);
  } catch (const std::exception& e) {
    err << "qnetsim: error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace qnet::cli
