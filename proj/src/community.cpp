#include "lonqap/community.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "lonqap/error.hpp"
#include "lonqap/rng.hpp"

namespace lonqap {

namespace {

void check_graph(const WeightedGraph& g) {
  for (const auto& e : g.edges) {
    require(e.u < g.num_nodes && e.v < g.num_nodes, "graph: edge endpoint out of range");
    require(e.u != e.v, "graph: self-loops are not supported");
    require(e.weight >= 0.0, "graph: negative edge weight");
  }
  if (!(g.total_weight() > 0.0)) throw UndefinedModularity();
}

// Compressed adjacency with both directions of every edge.
struct Adjacency {
  std::vector<std::size_t> offset;
  std::vector<std::uint32_t> target;
  std::vector<double> weight;

  explicit Adjacency(const WeightedGraph& g) : offset(g.num_nodes + 1, 0) {
    for (const auto& e : g.edges) {
      ++offset[e.u + 1];
      ++offset[e.v + 1];
    }
    for (std::size_t i = 0; i < g.num_nodes; ++i) offset[i + 1] += offset[i];
    target.resize(offset.back());
    weight.resize(offset.back());
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (const auto& e : g.edges) {
      target[fill[e.u]] = e.v;
      weight[fill[e.u]++] = e.weight;
      target[fill[e.v]] = e.u;
      weight[fill[e.v]++] = e.weight;
    }
  }
};

}  // namespace

std::string_view to_string(Detector d) {
  switch (d) {
    case Detector::greedy: return "greedy";
    case Detector::spinglass: return "spinglass";
    case Detector::external: return "external";
  }
  return "external";
}

Detector parse_detector(std::string_view s) {
  if (s == "greedy") return Detector::greedy;
  if (s == "spinglass") return Detector::spinglass;
  if (s == "external") return Detector::external;
  throw ContractViolation("unknown algorithm: " + std::string(s));
}

std::size_t Partition::num_communities() const {
  std::uint32_t top = 0;
  for (auto c : assignment) top = std::max(top, c + 1);
  return top;
}

std::vector<std::uint32_t> normalize_labels(std::span<const std::uint32_t> labels) {
  std::map<std::uint32_t, std::uint32_t> remap;
  std::vector<std::uint32_t> out;
  out.reserve(labels.size());
  for (auto c : labels) {
    auto [it, inserted] = remap.try_emplace(c, static_cast<std::uint32_t>(remap.size()));
    out.push_back(it->second);
  }
  return out;
}

double modularity(const WeightedGraph& g, std::span<const std::uint32_t> assignment) {
  require(assignment.size() == g.num_nodes, "modularity: assignment size does not match node count");
  check_graph(g);
  const double two_m = 2.0 * g.total_weight();
  const auto k = g.degrees();
  std::map<std::uint32_t, std::pair<double, double>> per_community;  // (internal 2*w, total degree)
  for (std::size_t i = 0; i < g.num_nodes; ++i) per_community[assignment[i]].second += k[i];
  for (const auto& e : g.edges)
    if (assignment[e.u] == assignment[e.v]) per_community[assignment[e.u]].first += 2.0 * e.weight;
  double q = 0.0;
  for (const auto& [c, stats] : per_community) {
    const double a = stats.second / two_m;
    q += stats.first / two_m - a * a;
  }
  return q;
}

Partition greedy_modularity(const WeightedGraph& g) {
  check_graph(g);
  const std::size_t n = g.num_nodes;
  const double two_m = 2.0 * g.total_weight();
  const auto k = g.degrees();

  // e[c][d]: edge weight between communities c and d over 2m (one direction).
  std::vector<std::map<std::uint32_t, double>> e(n);
  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = k[i] / two_m;
  for (const auto& edge : g.edges) {
    e[edge.u][edge.v] += edge.weight / two_m;
    e[edge.v][edge.u] += edge.weight / two_m;
  }

  struct RowBest {
    double gain = -std::numeric_limits<double>::infinity();
    std::uint32_t partner = 0;
    bool valid = false;
  };
  std::vector<RowBest> best(n);
  auto refresh = [&](std::uint32_t c) {
    RowBest b;
    for (const auto& [d, e_cd] : e[c]) {
      const double gain = 2.0 * (e_cd - a[c] * a[d]);
      if (!b.valid || gain > b.gain) b = {gain, d, true};
    }
    best[c] = b;
  };
  for (std::uint32_t c = 0; c < n; ++c) refresh(c);

  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) q -= a[i] * a[i];
  double best_q = q;
  std::size_t best_step = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> merges;

  for (;;) {
    // First row attaining the maximum gives the lexicographically smallest pair.
    std::int64_t row = -1;
    for (std::uint32_t c = 0; c < n; ++c)
      if (best[c].valid && (row < 0 || best[c].gain > best[row].gain)) row = c;
    if (row < 0) break;
    const auto keep = static_cast<std::uint32_t>(std::min<std::uint32_t>(row, best[row].partner));
    const auto gone = static_cast<std::uint32_t>(std::max<std::uint32_t>(row, best[row].partner));
    q += best[row].gain;
    merges.emplace_back(keep, gone);
    if (q > best_q) {
      best_q = q;
      best_step = merges.size();
    }

    for (const auto& [d, e_gd] : e[gone]) {
      e[d].erase(gone);
      if (d == keep) continue;
      e[keep][d] += e_gd;
      e[d][keep] += e_gd;
    }
    e[gone].clear();
    e[keep].erase(gone);
    a[keep] += a[gone];
    a[gone] = 0.0;
    best[gone] = {};
    refresh(keep);
    for (const auto& [d, unused] : e[keep]) refresh(d);
  }

  // Replay the merge sequence up to the best recorded step.
  std::vector<std::uint32_t> parent(n);
  for (std::uint32_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t s = 0; s < best_step; ++s) parent[find(merges[s].second)] = find(merges[s].first);
  std::vector<std::uint32_t> labels(n);
  for (std::uint32_t i = 0; i < n; ++i) labels[i] = find(i);

  Partition part;
  part.assignment = normalize_labels(labels);
  part.algorithm = Detector::greedy;
  part.q = modularity(g, part.assignment);
  return part;
}

double potts_hamiltonian(const WeightedGraph& g, std::span<const std::uint32_t> spins, double gamma) {
  require(spins.size() == g.num_nodes, "potts_hamiltonian: spin vector size does not match node count");
  check_graph(g);
  const double two_m = 2.0 * g.total_weight();
  const auto k = g.degrees();
  double h = 0.0;
  for (const auto& e : g.edges)
    if (spins[e.u] == spins[e.v]) h -= e.weight;
  // Null-model term over unordered pairs i<j in the same state: ((sum k)^2 - sum k^2) / 2.
  std::map<std::uint32_t, std::pair<double, double>> sums;
  for (std::size_t i = 0; i < g.num_nodes; ++i) {
    auto& s = sums[spins[i]];
    s.first += k[i];
    s.second += k[i] * k[i];
  }
  for (const auto& [state, s] : sums) h += gamma * (s.first * s.first - s.second) / 2.0 / two_m;
  return h;
}

Partition spinglass_communities(const WeightedGraph& g, std::uint64_t seed, const SpinGlassConfig& cfg) {
  check_graph(g);
  require(cfg.spins >= 1, "spinglass: spin count must be positive");
  require(cfg.gamma >= 0.0, "spinglass: gamma must be non-negative");
  const auto& sched = cfg.schedule;
  require(sched.cooling_factor > 0.0 && sched.cooling_factor < 1.0, "spinglass: cooling factor must lie in (0,1)");
  require(sched.sweeps_per_temperature >= 1, "spinglass: sweeps per temperature must be positive");
  require(sched.t_start >= 0.0 && sched.t_stop >= 0.0, "spinglass: temperatures must be non-negative");

  const std::size_t n = g.num_nodes;
  const double two_m = 2.0 * g.total_weight();
  const auto k = g.degrees();
  const Adjacency adj(g);
  const auto q_states = static_cast<std::uint32_t>(cfg.spins);

  // Isolated nodes do not enter H; they are given their own communities at the end.
  std::vector<std::uint32_t> active;
  for (std::uint32_t i = 0; i < n; ++i)
    if (k[i] > 0.0) active.push_back(i);

  Xoshiro256 rng(seed);
  std::vector<std::uint32_t> spin(n, 0);
  std::vector<double> state_degree(q_states, 0.0);
  for (auto i : active) {
    spin[i] = static_cast<std::uint32_t>(rng.below(q_states));
    state_degree[spin[i]] += k[i];
  }
  std::vector<double> link_to(q_states, 0.0);

  struct Proposal {
    std::uint32_t node;
    std::uint32_t to;
    double delta;
  };
  auto propose = [&]() -> std::optional<Proposal> {
    if (q_states < 2) return std::nullopt;
    const std::uint32_t i = active[rng.below(active.size())];
    const std::uint32_t from = spin[i];
    auto to = static_cast<std::uint32_t>(rng.below(q_states - 1));
    if (to >= from) ++to;
    double w_from = 0.0, w_to = 0.0;
    for (std::size_t t = adj.offset[i]; t < adj.offset[i + 1]; ++t) {
      const auto s = spin[adj.target[t]];
      if (s == from)
        w_from += adj.weight[t];
      else if (s == to)
        w_to += adj.weight[t];
    }
    const double gain_to = w_to - cfg.gamma * k[i] * state_degree[to] / two_m;
    const double gain_from = w_from - cfg.gamma * k[i] * (state_degree[from] - k[i]) / two_m;
    return Proposal{i, to, gain_from - gain_to};
  };
  auto apply = [&](const Proposal& p) {
    state_degree[spin[p.node]] -= k[p.node];
    state_degree[p.to] += k[p.node];
    spin[p.node] = p.to;
  };
  auto accept = [&](double delta, double temperature) {
    if (delta < 0.0) return true;
    if (delta == 0.0) return false;
    return rng.uniform01() < std::exp(-delta / temperature);
  };

  const std::size_t steps_per_temperature = sched.sweeps_per_temperature * std::max<std::size_t>(1, active.size());

  // Calibrate: start from the mean uphill move, double until >= 90% acceptance.
  double t = sched.t_start;
  if (t == 0.0) {
    double uphill = 0.0;
    std::size_t count = 0;
    for (std::size_t s = 0; s < steps_per_temperature; ++s)
      if (auto p = propose(); p && p->delta > 0.0) {
        uphill += p->delta;
        ++count;
      }
    t = count ? (uphill / static_cast<double>(count)) / -std::log(0.9) : 1.0;
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::size_t accepted = 0, proposed = 0;
      for (std::size_t s = 0; s < std::max<std::size_t>(active.size(), 1); ++s)
        if (auto p = propose()) {
          ++proposed;
          if (p->delta <= 0.0 || rng.uniform01() < std::exp(-p->delta / t)) ++accepted;
        }
      if (proposed == 0 || accepted >= 0.9 * static_cast<double>(proposed)) break;
      t *= 2.0;
    }
  }
  const double t_stop = sched.t_stop > 0.0 ? sched.t_stop : t * 1e-8;

  double energy = potts_hamiltonian(g, spin, cfg.gamma);
  double best_energy = energy;
  std::vector<std::uint32_t> best_spin = spin;

  for (; t > t_stop; t *= sched.cooling_factor) {
    std::size_t accepted = 0;
    for (std::size_t s = 0; s < steps_per_temperature; ++s) {
      const auto p = propose();
      if (!p || !accept(p->delta, t)) continue;
      apply(*p);
      energy += p->delta;
      ++accepted;
    }
    energy = potts_hamiltonian(g, spin, cfg.gamma);
    if (energy < best_energy) {
      best_energy = energy;
      best_spin = spin;
    }
    if (accepted == 0) break;
  }

  std::vector<std::uint32_t> labels(n);
  std::uint32_t next_free = q_states;
  for (std::uint32_t i = 0; i < n; ++i) labels[i] = k[i] > 0.0 ? best_spin[i] : next_free++;

  Partition part;
  part.assignment = normalize_labels(labels);
  part.algorithm = Detector::spinglass;
  part.seed = seed;
  part.q = modularity(g, part.assignment);
  return part;
}

std::string partition_csv(const Partition& part, double gamma) {
  std::ostringstream out;
  char q[32], gm[32];
  std::snprintf(q, sizeof q, "%.17g", part.q);
  std::snprintf(gm, sizeof gm, "%.17g", gamma);
  out << "# algorithm=" << to_string(part.algorithm) << " seed=";
  if (part.seed) out << *part.seed;
  out << " gamma=" << gm << " Q=" << q << "\n";
  out << "node_id,community_id\n";
  for (std::size_t i = 0; i < part.assignment.size(); ++i) out << i << ',' << part.assignment[i] << '\n';
  return out.str();
}

}  // namespace lonqap
