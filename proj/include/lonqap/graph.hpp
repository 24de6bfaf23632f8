#pragma once

#include <cstdint>
#include <vector>

namespace lonqap {

struct WeightedEdge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  double weight = 0.0;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Undirected weighted graph; each edge is stored once. Nodes may be isolated.
struct WeightedGraph {
  std::size_t num_nodes = 0;
  std::vector<WeightedEdge> edges;

  /// Sum of edge weights (m in the modularity formulas).
  double total_weight() const {
    double m = 0.0;
    for (const auto& e : edges) m += e.weight;
    return m;
  }

  std::vector<double> degrees() const {
    std::vector<double> k(num_nodes, 0.0);
    for (const auto& e : edges) {
      k[e.u] += e.weight;
      k[e.v] += e.weight;
    }
    return k;
  }
};

}  // namespace lonqap
