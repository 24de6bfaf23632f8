#include "lonqap/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lonqap/error.hpp"

namespace lonqap {

namespace {

constexpr std::size_t kExactLimit = 20;

// Number of size-k subsets of `ranks` whose sum is at least `target`.
std::uint64_t count_subsets_at_least(const std::vector<double>& ranks, std::size_t k, double target) {
  std::uint64_t hits = 0;
  const double eps = 1e-9;
  auto recurse = [&](auto&& self, std::size_t start, std::size_t left, double sum) -> void {
    if (left == 0) {
      hits += sum >= target - eps;
      return;
    }
    for (std::size_t i = start; i + left <= ranks.size(); ++i) self(self, i + 1, left - 1, sum + ranks[i]);
  };
  recurse(recurse, 0, k, 0.0);
  return hits;
}

double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace

double interpolated_quantile(std::span<const double> sorted, double p) {
  require(!sorted.empty(), "quantile: empty sample");
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

FiveNumberSummary five_number_summary(std::vector<double> values) {
  require(!values.empty(), "five_number_summary: empty sample");
  std::sort(values.begin(), values.end());
  return {values.size(),
          values.front(),
          interpolated_quantile(values, 0.25),
          interpolated_quantile(values, 0.5),
          interpolated_quantile(values, 0.75),
          values.back()};
}

MannWhitneyResult mann_whitney_greater(std::span<const double> x, std::span<const double> y) {
  require(!x.empty() && !y.empty(), "mann_whitney: both samples must be non-empty");
  const std::size_t nx = x.size(), ny = y.size(), total = nx + ny;

  // Midranks of the pooled sample; x occupies the first nx slots.
  std::vector<std::pair<double, std::size_t>> pooled;
  pooled.reserve(total);
  for (std::size_t i = 0; i < nx; ++i) pooled.emplace_back(x[i], i);
  for (std::size_t i = 0; i < ny; ++i) pooled.emplace_back(y[i], nx + i);
  std::sort(pooled.begin(), pooled.end());
  std::vector<double> ranks(total);
  double tie_term = 0.0;
  for (std::size_t i = 0; i < total;) {
    std::size_t j = i;
    while (j < total && pooled[j].first == pooled[i].first) ++j;
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) ranks[pooled[t].second] = midrank;
    const double ties = static_cast<double>(j - i);
    tie_term += ties * ties * ties - ties;
    i = j;
  }
  double rank_sum_x = 0.0;
  for (std::size_t i = 0; i < nx; ++i) rank_sum_x += ranks[i];

  MannWhitneyResult res;
  res.u = rank_sum_x - static_cast<double>(nx) * static_cast<double>(nx + 1) / 2.0;

  if (total < kExactLimit) {
    res.exact = true;
    res.p_value = static_cast<double>(count_subsets_at_least(ranks, nx, rank_sum_x)) / binomial(total, nx);
    return res;
  }
  const double dn = static_cast<double>(total);
  const double mean = static_cast<double>(nx) * static_cast<double>(ny) / 2.0;
  const double var = static_cast<double>(nx) * static_cast<double>(ny) / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
  if (var <= 0.0) {
    res.p_value = res.u > mean ? 0.0 : 1.0;
    return res;
  }
  const double z = (res.u - mean - 0.5) / std::sqrt(var);
  res.p_value = 0.5 * std::erfc(z / std::sqrt(2.0));
  return res;
}

}  // namespace lonqap
