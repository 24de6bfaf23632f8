#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lonqap/graph.hpp"

namespace lonqap {

enum class Detector { greedy, spinglass, external };

std::string_view to_string(Detector d);
Detector parse_detector(std::string_view s);

struct Partition {
  /// Node id -> community id; ids are 0..k-1, numbered by first appearance.
  std::vector<std::uint32_t> assignment;
  double q = 0.0;
  Detector algorithm = Detector::external;
  std::optional<std::uint64_t> seed;

  std::size_t num_communities() const;
};

/// Relabels community ids densely in order of first appearance.
std::vector<std::uint32_t> normalize_labels(std::span<const std::uint32_t> labels);

/// Q = (1/2m) sum_ij [w_ij - k_i k_j / 2m] delta(c_i, c_j) over ordered pairs.
/// Throws UndefinedModularity when the graph carries no edge weight.
double modularity(const WeightedGraph& g, std::span<const std::uint32_t> assignment);

/// Agglomerative modularity ascent from singletons. Each step merges the connected
/// pair with the largest gain (ties: smallest (low id, high id) pair); returns the
/// best partition seen along the merge sequence.
Partition greedy_modularity(const WeightedGraph& g);

struct AnnealingSchedule {
  /// Starting temperature; 0 calibrates it so at least 90% of the first
  /// temperature step's proposals are accepted.
  double t_start = 0.0;
  double cooling_factor = 0.99;
  /// Single-spin-flip attempts per temperature, as a multiple of the node count.
  std::size_t sweeps_per_temperature = 50;
  /// Hard floor on the temperature; 0 means t_start * 1e-8.
  double t_stop = 0.0;
};

struct SpinGlassConfig {
  double gamma = 1.0;
  std::size_t spins = 25;
  AnnealingSchedule schedule;
};

/// H(s) = -sum_{i<j} [w_ij - gamma k_i k_j / 2m] delta(s_i, s_j).
double potts_hamiltonian(const WeightedGraph& g, std::span<const std::uint32_t> spins, double gamma);

/// Potts-model community detection by simulated annealing of potts_hamiltonian.
/// Stops after a temperature step with no accepted move (or at t_stop) and
/// returns the lowest-energy state seen. Deterministic for a fixed seed.
Partition spinglass_communities(const WeightedGraph& g, std::uint64_t seed, const SpinGlassConfig& cfg = {});

/// `node_id,community_id` rows preceded by a `#` comment with algorithm, seed, gamma and Q.
std::string partition_csv(const Partition& part, double gamma = 1.0);

}  // namespace lonqap
