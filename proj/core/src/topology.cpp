#include "qnet/topology.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "qnet/error.hpp"

namespace qnet {

namespace {

std::string pair_text(NodeId u, NodeId v) {
  return "(" + std::to_string(u) + ", " + std::to_string(v) + ")";
}

}  // namespace

QNetGraph::QNetGraph(std::size_t n, std::vector<PhysicalLink> links) : adjacency_(n) {
  for (auto& link : links) {
    if (link.u == link.v) throw ValidationError("self-loop at node " + std::to_string(link.u));
    if (link.u >= n || link.v >= n)
      throw ValidationError("link " + pair_text(link.u, link.v) + " references a node outside [0, " + std::to_string(n) + ")");
    if (link.hc < 0) throw ValidationError("link " + pair_text(link.u, link.v) + " has negative hc");
    if (link.u > link.v) std::swap(link.u, link.v);
  }
  std::sort(links.begin(), links.end(), [](const PhysicalLink& a, const PhysicalLink& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  for (std::size_t i = 1; i < links.size(); ++i) {
    if (links[i].u == links[i - 1].u && links[i].v == links[i - 1].v)
      throw ValidationError("duplicate link " + pair_text(links[i].u, links[i].v));
  }
  links_ = std::move(links);
  for (std::size_t i = 0; i < links_.size(); ++i) {
    adjacency_[links_[i].u].push_back({links_[i].v, i});
    adjacency_[links_[i].v].push_back({links_[i].u, i});
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end(), [](const Adjacent& a, const Adjacent& b) { return a.node < b.node; });
  }
}

std::size_t QNetGraph::find_link(NodeId u, NodeId v) const {
  if (u >= node_count() || v >= node_count()) return npos;
  const auto& adj = adjacency_[u];
  auto it = std::lower_bound(adj.begin(), adj.end(), v, [](const Adjacent& a, NodeId x) { return a.node < x; });
  return (it != adj.end() && it->node == v) ? it->link : npos;
}

std::int64_t QNetGraph::hc(NodeId u, NodeId v) const {
  const auto i = find_link(u, v);
  if (i == npos) throw std::out_of_range("no link " + pair_text(u, v));
  return links_[i].hc;
}

void QNetGraph::add_hc(NodeId u, NodeId v, std::int64_t delta) {
  const auto i = find_link(u, v);
  if (i == npos) throw std::out_of_range("no link " + pair_text(u, v));
  if (links_[i].hc + delta < 0) throw ValidationError("hc of link " + pair_text(u, v) + " would become negative");
  links_[i].hc += delta;
}

bool QNetGraph::connected() const {
  const auto n = node_count();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (const auto& a : adjacency_[u]) {
      if (!seen[a.node]) {
        seen[a.node] = 1;
        ++reached;
        stack.push_back(a.node);
      }
    }
  }
  return reached == n;
}

QNetGraph generate_graph(const TopologyParams& params, Rng& rng) {
  const auto n = params.nodes;
  if (n < 2) throw ValidationError("nodes must be at least 2");
  if (!(params.avg_degree > 0.0) || params.avg_degree > static_cast<double>(n - 1))
    throw ValidationError("avg_degree must lie in (0, nodes - 1]");
  if (params.hc_max < 0) throw ValidationError("hc_max must be non-negative");

  const double p = params.avg_degree / static_cast<double>(n - 1);
  std::vector<PhysicalLink> links;
  for (std::size_t attempt = 0; attempt < params.max_attempts; ++attempt) {
    links.clear();
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (rng.bernoulli(p)) links.push_back({u, v, 0});
      }
    }
    QNetGraph candidate(n, links);
    if (!candidate.connected()) continue;
    for (auto& link : links) link.hc = rng.between(0, params.hc_max);
    return QNetGraph(n, std::move(links));
  }
  throw InfeasibleError("no connected graph with " + std::to_string(n) + " nodes and average degree " +
                        std::to_string(params.avg_degree) + " after " + std::to_string(params.max_attempts) +
                        " attempts");
}

std::size_t degree(const QNetGraph& g, NodeId u) { return g.neighbors(u).size(); }

void save_graph(const QNetGraph& g, std::ostream& out) {
  out << "{\"n\": " << g.node_count() << ", \"edges\": [";
  bool first = true;
  for (const auto& link : g.links()) {
    out << (first ? "\n" : ",\n") << "  {\"u\": " << link.u << ", \"v\": " << link.v << ", \"hc\": " << link.hc << "}";
    first = false;
  }
  out << (first ? "" : "\n") << "]}\n";
}

std::string graph_to_string(const QNetGraph& g) {
  std::ostringstream out;
  save_graph(g, out);
  return out.str();
}

namespace {

std::int64_t require_int(const nlohmann::json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + "." + key + ": missing");
  if (!it->is_number_integer()) throw ParseError(where + "." + key + ": expected integer");
  return it->get<std::int64_t>();
}

}  // namespace

QNetGraph load_graph(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("graph: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("graph: expected object");
  const auto n = require_int(doc, "n", "graph");
  if (n < 0) throw ValidationError("graph.n: must be non-negative");
  const auto edges = doc.find("edges");
  if (edges == doc.end()) throw ParseError("graph.edges: missing");
  if (!edges->is_array()) throw ParseError("graph.edges: expected array");

  std::vector<PhysicalLink> links;
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  for (std::size_t i = 0; i < edges->size(); ++i) {
    const auto& e = (*edges)[i];
    const std::string where = "edges[" + std::to_string(i) + "]";
    if (!e.is_object()) throw ParseError(where + ": expected object");
    auto u = require_int(e, "u", where);
    auto v = require_int(e, "v", where);
    const auto hc = require_int(e, "hc", where);
    if (u < 0 || u >= n) throw ValidationError(where + ".u: out of range");
    if (v < 0 || v >= n) throw ValidationError(where + ".v: out of range");
    if (u == v) throw ValidationError(where + ": self-loop");
    if (hc < 0) throw ValidationError(where + ".hc: must be non-negative");
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second)
      throw ParseError(where + ": duplicate edge " + pair_text(static_cast<NodeId>(u), static_cast<NodeId>(v)));
    links.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), hc});
  }
  return QNetGraph(static_cast<std::size_t>(n), std::move(links));
}

QNetGraph graph_from_string(const std::string& text) {
  std::istringstream in(text);
  return load_graph(in);
}

}  // namespace qnet
