#include "lonqap/lon.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "lonqap/error.hpp"

namespace lonqap {

namespace {

// Dense K x K tallies while they stay below this many cells per worker.
constexpr std::uint64_t kDenseCellLimit = std::uint64_t{1} << 22;

class CountTable {
 public:
  explicit CountTable(std::size_t k) : k_(k), dense_(static_cast<std::uint64_t>(k) * k <= kDenseCellLimit) {
    if (dense_) cells_.assign(k * k, 0);
  }

  void add(std::uint32_t src, std::uint32_t dst) {
    if (dense_)
      ++cells_[static_cast<std::size_t>(src) * k_ + dst];
    else
      ++sparse_[(static_cast<std::uint64_t>(src) << 32) | dst];
  }

  void merge_into(std::unordered_map<std::uint64_t, std::uint64_t>& total) const {
    if (dense_) {
      for (std::size_t c = 0; c < cells_.size(); ++c)
        if (cells_[c]) total[(static_cast<std::uint64_t>(c / k_) << 32) | (c % k_)] += cells_[c];
    } else {
      for (const auto& [key, v] : sparse_) total[key] += v;
    }
  }

 private:
  std::size_t k_;
  bool dense_;
  std::vector<std::uint64_t> cells_;
  std::unordered_map<std::uint64_t, std::uint64_t> sparse_;
};

void tally_block(const BasinMap& bm, std::uint64_t begin, std::uint64_t end, CountTable& table) {
  const std::size_t n = bm.n;
  std::array<int, kMaxExhaustiveSize> buf{};
  std::array<int, kMaxExhaustiveSize> code{};
  const std::span<int> p(buf.data(), n);
  const std::span<int> lehmer(code.data(), n);
  unrank_into(begin, p);
  for (std::uint64_t r = begin; r < end; ++r) {
    lehmer_code(p, lehmer);
    const std::uint32_t src = bm.assignment[r];
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) table.add(src, bm.assignment[rank_after_swap(p, lehmer, r, i, j)]);
    std::next_permutation(p.begin(), p.end());
  }
}

}  // namespace

std::uint64_t Lon::count(std::uint32_t src, std::uint32_t dst) const {
  const auto it = std::lower_bound(transitions.begin(), transitions.end(), TransitionCount{src, dst, 0},
                                   [](const TransitionCount& a, const TransitionCount& b) {
                                     return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
                                   });
  return it != transitions.end() && it->src == src && it->dst == dst ? it->count : 0;
}

Lon build_lon(const QapInstance& inst, const BasinMap& bm, std::size_t workers) {
  const std::size_t n = inst.size();
  require(n >= 2, "build_lon: n must be at least 2");
  require(bm.n == n && n <= kMaxExhaustiveSize && bm.assignment.size() == factorial(n),
          "build_lon: basin map does not match instance size");
  require(!bm.optima.empty(), "build_lon: basin map has no optima");
  for (const auto& o : bm.optima)
    require(o.rep.size() == n && cost(inst, o.rep) == o.cost, "build_lon: basin map was built from another instance");

  const std::size_t k = bm.optima.size();
  const std::uint64_t total = bm.assignment.size();
  workers = std::max<std::size_t>(1, std::min<std::uint64_t>(workers, total));
  std::vector<CountTable> tables;
  tables.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) tables.emplace_back(k);

  auto block_begin = [&](std::size_t w) { return total * w / workers; };
  if (workers == 1) {
    tally_block(bm, 0, total, tables[0]);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w)
      threads.emplace_back([&, w] { tally_block(bm, block_begin(w), block_begin(w + 1), tables[w]); });
    for (auto& t : threads) t.join();
  }

  std::unordered_map<std::uint64_t, std::uint64_t> merged;
  for (const auto& t : tables) t.merge_into(merged);

  Lon lon;
  lon.nodes = bm.optima;
  lon.neighborhood = neighborhood_size(n);
  lon.transitions.reserve(merged.size());
  for (const auto& [key, c] : merged)
    lon.transitions.push_back({static_cast<std::uint32_t>(key >> 32), static_cast<std::uint32_t>(key), c});
  std::sort(lon.transitions.begin(), lon.transitions.end(), [](const TransitionCount& a, const TransitionCount& b) {
    return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
  });
  return lon;
}

double nearest_rank_quantile(std::vector<double> values, double alpha) {
  require(!values.empty(), "nearest_rank_quantile: no values");
  require(alpha >= 0.0 && alpha <= 1.0, "nearest_rank_quantile: alpha must lie in [0,1]");
  std::sort(values.begin(), values.end());
  // Guard ceil() against products like 0.05 * 60 landing a hair above an integer.
  const double position = std::ceil(alpha * static_cast<double>(values.size()) - 1e-9);
  const auto index = static_cast<std::size_t>(std::clamp(position, 1.0, static_cast<double>(values.size())));
  return values[index - 1];
}

FilteredLon filter_lon(const Lon& lon, double alpha) {
  require(alpha >= 0.0 && alpha <= 1.0, "filter_lon: alpha must lie in [0,1]");
  require(!lon.nodes.empty(), "filter_lon: empty network");

  FilteredLon out;
  out.nodes = lon.nodes;
  out.alpha = alpha;
  out.graph.num_nodes = lon.nodes.size();
  // Transitions are sorted by (src, dst); the reverse direction is looked up.
  std::vector<WeightedEdge> undirected;
  for (const auto& t : lon.transitions) {
    if (t.src >= t.dst) continue;
    const std::uint64_t back = lon.count(t.dst, t.src);
    const double w_back =
        static_cast<double>(back) / static_cast<double>(lon.row_denominator(t.dst));
    undirected.push_back({t.src, t.dst, (lon.weight(t) + w_back) / 2.0});
  }
  // A pair seen only as dst > src (count_ij = 0 but count_ji > 0) cannot occur for
  // the symmetric swap neighborhood, but keep the construction total anyway.
  for (const auto& t : lon.transitions) {
    if (t.src <= t.dst || lon.count(t.dst, t.src) != 0) continue;
    undirected.push_back({t.dst, t.src, lon.weight(t) / 2.0});
  }
  std::sort(undirected.begin(), undirected.end(),
            [](const WeightedEdge& a, const WeightedEdge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });

  if (alpha == 0.0 || undirected.empty()) {
    out.threshold = 0.0;
    out.graph.edges = std::move(undirected);
    return out;
  }
  std::vector<double> weights;
  weights.reserve(undirected.size());
  for (const auto& e : undirected) weights.push_back(e.weight);
  out.threshold = nearest_rank_quantile(std::move(weights), alpha);
  for (const auto& e : undirected)
    if (e.weight >= out.threshold) out.graph.edges.push_back(e);
  return out;
}

}  // namespace lonqap
