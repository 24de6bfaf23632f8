#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lonqap/permutation.hpp"
#include "lonqap/qap.hpp"

namespace lonqap {

/// Largest n accepted by exhaustive enumeration. The assignment array holds
/// n! 32-bit ids: 11! is ~160 MB, 12! is ~1.9 GB.
inline constexpr std::size_t kMaxExhaustiveSize = 12;

struct LocalOptimum {
  std::uint32_t id = 0;
  Permutation rep;
  std::uint64_t rank = 0;
  std::int64_t cost = 0;
  std::uint64_t basin_size = 0;

  friend bool operator==(const LocalOptimum&, const LocalOptimum&) = default;
};

/// Every configuration rank mapped to the id of the optimum its climb reaches.
/// Optimum ids ascend with the rank of the optimum.
struct BasinMap {
  std::size_t n = 0;
  std::vector<std::uint32_t> assignment;
  std::vector<LocalOptimum> optima;

  friend bool operator==(const BasinMap&, const BasinMap&) = default;
};

enum class ClimbMode {
  /// Climb from every configuration independently.
  reference,
  /// Reuse endpoints of configurations already visited by earlier climbs in the same block.
  memoized,
};

/// Best-improvement descent under the swap neighborhood. Takes the most negative
/// delta, first in (i, j) scan order on ties; stops when no move strictly improves.
Permutation hill_climb(const QapInstance& inst, const Permutation& start);

/// In-place variant used by the enumerators. Returns the number of moves made.
std::size_t hill_climb_in_place(const QapInstance& inst, std::span<int> p);

/// Assigns every configuration of the instance to its basin. The result does not
/// depend on `workers` or `mode`. Throws ResourceLimit when n > kMaxExhaustiveSize.
BasinMap enumerate_basins(const QapInstance& inst, std::size_t workers = 1,
                          ClimbMode mode = ClimbMode::reference);

/// Little-endian binary: "LONB" magic, u32 n, u64 count (= n!), then count u32 optimum ids.
void write_basin_binary(const BasinMap& bm, const std::filesystem::path& path);
/// Reads the assignment written by write_basin_binary (optima roster is not stored).
BasinMap read_basin_binary(const std::filesystem::path& path);

/// CSV `id,rank,cost,basin_size`, one row per optimum.
std::string optima_roster_csv(const BasinMap& bm);

}  // namespace lonqap
