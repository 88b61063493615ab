#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "qnet/overlay.hpp"
#include "qnet/rng.hpp"
#include "qnet/topology.hpp"

namespace qnet {

/// HC statistics a node computes over its eligible neighbors.
///
/// A neighbor is eligible when the link to it has a non-zero HC; zero-HC
/// links neither count toward the mean nor become proactive partners.
struct HcStats {
  NodeId node = 0;
  double mean = 0.0;
  std::map<NodeId, double> deviations;  // neighbor -> (mean - hc)^2
};

/// Arithmetic mean of HCs over u's eligible neighbors; nullopt if none.
std::optional<double> mean_hc(const QNetGraph& g, NodeId u);

/// (mean - hc)^2.
double squared_deviation(double mean, std::int64_t hc);

/// Mean and per-neighbor squared deviations for u; nullopt if u has no
/// eligible neighbor.
std::optional<HcStats> hc_stats(const QNetGraph& g, NodeId u);

/// The eligible neighbor whose link HC is closest to the node's mean HC.
///
/// Ties are resolved through `choice`. The ranking is done in exact integer
/// arithmetic, so mathematically equal deviations always tie.
std::optional<NodeId> select_proactive_partner(const QNetGraph& g, NodeId u, ChoiceSource& choice);

/// Every node, in ascending id order, entangles with its selected partner.
/// Duplicate selections collapse into one pair.
EntanglementOverlay build_proactive_overlay(const QNetGraph& g, ChoiceSource& choice);

/// Transitive closure of the overlay under entanglement swapping: every
/// connected component becomes a clique.
EntanglementOverlay swap_closure(const EntanglementOverlay& o);

}  // namespace qnet
