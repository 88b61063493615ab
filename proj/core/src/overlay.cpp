#include "qnet/overlay.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qnet/error.hpp"

namespace qnet {

bool EntanglementOverlay::add(NodeId u, NodeId v) {
  const auto n = node_count();
  if (u == v) throw std::invalid_argument("self-pair at node " + std::to_string(u));
  if (u >= n || v >= n) throw std::invalid_argument("pair outside overlay range");
  auto& cell = matrix_[u * n + v];
  if (cell) return false;
  cell = 1;
  matrix_[v * n + u] = 1;
  auto insert_sorted = [](std::vector<NodeId>& list, NodeId x) { list.insert(std::upper_bound(list.begin(), list.end(), x), x); };
  insert_sorted(neighbors_[u], v);
  insert_sorted(neighbors_[v], u);
  ++pairs_;
  return true;
}

std::vector<NodePair> EntanglementOverlay::pairs() const {
  std::vector<NodePair> out;
  out.reserve(pairs_);
  for (NodeId u = 0; u < node_count(); ++u) {
    for (NodeId v : neighbors_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

void save_overlay(const EntanglementOverlay& o, std::ostream& out) {
  out << "{\"pairs\": [";
  bool first = true;
  for (const auto& p : o.pairs()) {
    out << (first ? "\n" : ",\n") << "  {\"u\": " << p.lo << ", \"v\": " << p.hi << "}";
    first = false;
  }
  out << (first ? "" : "\n") << "]}\n";
}

std::string overlay_to_string(const EntanglementOverlay& o) {
  std::ostringstream out;
  save_overlay(o, out);
  return out.str();
}

EntanglementOverlay load_overlay(std::istream& in, std::size_t n) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("overlay: invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("pairs") || !doc["pairs"].is_array())
    throw ParseError("overlay.pairs: expected array");
  EntanglementOverlay o(n);
  const auto& pairs = doc["pairs"];
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string where = "pairs[" + std::to_string(i) + "]";
    const auto& p = pairs[i];
    for (const char* key : {"u", "v"}) {
      if (!p.is_object() || !p.contains(key) || !p[key].is_number_integer())
        throw ParseError(where + "." + key + ": expected integer");
    }
    const auto u = p["u"].get<std::int64_t>();
    const auto v = p["v"].get<std::int64_t>();
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
      throw ValidationError(where + ": node out of range");
    if (u == v) throw ValidationError(where + ": self-pair");
    o.add(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  return o;
}

}  // namespace qnet
