#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lonqap/community.hpp"
#include "lonqap/generator.hpp"
#include "lonqap/stats.hpp"

namespace lonqap {

struct ExperimentConfig {
  std::vector<InstanceClass> classes{InstanceClass::uniform, InstanceClass::real_like};
  std::size_t n_uniform = 9;
  std::size_t n_real_like = 11;
  std::size_t count = 200;
  std::uint64_t master_seed = 1;
  double alpha = 0.05;
  std::vector<Detector> algorithms{Detector::greedy, Detector::spinglass};
  std::size_t spinglass_seeds = 1;
  std::size_t workers = 1;
  /// Generator parameters shared by all instances; n, seed and class are set per instance.
  GeneratorConfig generator;
  SpinGlassConfig spinglass;

  std::size_t size_for(InstanceClass cls) const {
    return cls == InstanceClass::uniform ? n_uniform : n_real_like;
  }
  void validate() const;
};

/// Parses `key=value` lines ('#' starts a comment). Keys: classes, n, n_uniform,
/// n_real_like, count, master_seed, alpha, algorithms, spinglass_seeds, workers,
/// uniform_max, rl_grid, rl_exponent, rl_sparsity, gamma, spins, cooling_factor,
/// sweeps_per_temperature, t_start, t_stop. Lists are comma separated.
ExperimentConfig parse_experiment_config(std::string_view text);

/// Seed of instance `index` of class `cls`: derive_seed(derive_seed(master, class_slot), index),
/// with class_slot 0 for uniform and 1 for real_like.
std::uint64_t instance_seed(std::uint64_t master, InstanceClass cls, std::size_t index);
/// Seed of the k-th spin-glass run on an instance: derive_seed(instance_seed, k).
std::uint64_t detector_seed(std::uint64_t instance_seed, std::size_t run);

struct ExperimentRecord {
  InstanceClass cls = InstanceClass::uniform;
  std::size_t n = 0;
  std::uint64_t instance_seed = 0;
  Detector algorithm = Detector::greedy;
  double alpha = 0.0;
  std::size_t n_optima = 0;
  std::size_t n_edges_filtered = 0;
  std::size_t n_communities = 0;
  std::optional<double> q;
  double wall_ms = 0.0;
  /// Empty on success, otherwise a short tag (no commas).
  std::string error;
};

/// Records ordered by (class, instance index, algorithm, spin-glass run).
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg);

/// Header `class,n,instance_seed,algorithm,alpha,n_optima,n_edges_filtered,n_communities,q,wall_ms,error`.
/// Q is printed with 17 significant digits. Without timing the wall_ms column is dropped.
std::string records_csv(const std::vector<ExperimentRecord>& records, bool with_timing = true);
std::vector<ExperimentRecord> parse_records_csv(std::string_view text);

struct GroupSummary {
  InstanceClass cls;
  Detector algorithm;
  FiveNumberSummary stats;
};

struct SeparationTest {
  Detector algorithm;
  std::size_t n_real_like = 0;
  std::size_t n_uniform = 0;
  MannWhitneyResult result;
};

struct ExperimentSummary {
  std::vector<GroupSummary> groups;
  std::vector<SeparationTest> tests;
  std::vector<std::string> warnings;
};

/// Five-number summaries of Q per (class, algorithm) and, per algorithm, the
/// one-sided test Q(real_like) > Q(uniform) when both groups have >= 5 values.
ExperimentSummary summarize(const std::vector<ExperimentRecord>& records);

std::string summary_csv(const ExperimentSummary& summary);

}  // namespace lonqap
