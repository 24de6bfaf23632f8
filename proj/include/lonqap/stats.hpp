#pragma once

#include <span>
#include <vector>

namespace lonqap {

/// Quantiles by linear interpolation between order statistics: position
/// p * (count - 1) in the sorted sample (R's default, type 7).
double interpolated_quantile(std::span<const double> sorted, double p);

struct FiveNumberSummary {
  std::size_t count = 0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

FiveNumberSummary five_number_summary(std::vector<double> values);

struct MannWhitneyResult {
  double u = 0.0;
  double p_value = 1.0;
  bool exact = false;
};

/// One-sided Mann-Whitney U test of "x tends to exceed y". U counts pairs with
/// x > y plus half the ties. Exact permutation distribution over midranks when
/// x.size() + y.size() < 20; otherwise the tie-corrected normal approximation
/// with continuity correction.
MannWhitneyResult mann_whitney_greater(std::span<const double> x, std::span<const double> y);

}  // namespace lonqap
