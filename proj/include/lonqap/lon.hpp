#pragma once

#include <cstdint>
#include <vector>

#include "lonqap/graph.hpp"
#include "lonqap/landscape.hpp"

namespace lonqap {

/// Number of ordered configuration pairs (s, s') with s in basin `src`,
/// s' in basin `dst` and s' a swap neighbor of s.
struct TransitionCount {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  std::uint64_t count = 0;

  friend bool operator==(const TransitionCount&, const TransitionCount&) = default;
};

/// Directed local optima network. The transition probability from basin i to
/// basin j is count_ij / (basin_size_i * n(n-1)/2); rows sum to one including
/// the self-loop.
struct Lon {
  std::vector<LocalOptimum> nodes;
  std::uint64_t neighborhood = 0;
  /// Non-zero counts sorted by (src, dst); self-loops included.
  std::vector<TransitionCount> transitions;

  std::uint64_t row_denominator(std::uint32_t src) const { return nodes[src].basin_size * neighborhood; }
  double weight(const TransitionCount& t) const {
    return static_cast<double>(t.count) / static_cast<double>(row_denominator(t.src));
  }
  /// Count for (src, dst), 0 if absent.
  std::uint64_t count(std::uint32_t src, std::uint32_t dst) const;
};

/// Undirected backbone: w_ij = (w_i->j + w_j->i) / 2 for i < j, self-loops dropped,
/// edges below `threshold` removed. Edges sorted by (u, v).
struct FilteredLon {
  std::vector<LocalOptimum> nodes;
  WeightedGraph graph;
  double threshold = 0.0;
  double alpha = 0.0;
};

Lon build_lon(const QapInstance& inst, const BasinMap& bm, std::size_t workers = 1);

/// Nearest-rank empirical quantile: the ceil(alpha * size)-th smallest value (1-based, at least 1).
double nearest_rank_quantile(std::vector<double> values, double alpha);

/// alpha = 0 keeps every edge; otherwise edges with weight below the
/// nearest-rank alpha-quantile of the undirected weights are removed.
FilteredLon filter_lon(const Lon& lon, double alpha);

}  // namespace lonqap
