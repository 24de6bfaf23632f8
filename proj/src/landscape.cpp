#include "lonqap/landscape.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "lonqap/error.hpp"

namespace lonqap {

namespace {

constexpr std::uint32_t kUnassigned = std::numeric_limits<std::uint32_t>::max();
constexpr std::array<char, 4> kBasinMagic = {'L', 'O', 'N', 'B'};

struct Block {
  std::uint64_t begin;
  std::uint64_t end;
};

std::vector<Block> split_range(std::uint64_t total, std::size_t parts) {
  parts = std::max<std::size_t>(1, std::min<std::uint64_t>(parts, total));
  std::vector<Block> blocks;
  const std::uint64_t base = total / parts;
  const std::uint64_t extra = total % parts;
  std::uint64_t begin = 0;
  for (std::size_t k = 0; k < parts; ++k) {
    const std::uint64_t len = base + (k < extra ? 1 : 0);
    blocks.push_back({begin, begin + len});
    begin += len;
  }
  return blocks;
}

template <class Fn>
void run_blocks(const std::vector<Block>& blocks, Fn&& fn) {
  if (blocks.size() == 1) {
    fn(blocks[0]);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(blocks.size());
  for (const Block& b : blocks) threads.emplace_back([&fn, b] { fn(b); });
  for (auto& t : threads) t.join();
}

// Phase 1, reference mode: assignment[r] = rank of the climb endpoint.
void climb_block_reference(const QapInstance& inst, Block block, std::span<std::uint32_t> endpoint) {
  const std::size_t n = inst.size();
  std::array<int, kMaxExhaustiveSize> start{};
  std::array<int, kMaxExhaustiveSize> work{};
  const std::span<int> s(start.data(), n);
  unrank_into(block.begin, s);
  for (std::uint64_t r = block.begin; r < block.end; ++r) {
    std::copy(s.begin(), s.end(), work.begin());
    hill_climb_in_place(inst, std::span<int>(work.data(), n));
    endpoint[r] = static_cast<std::uint32_t>(rank(std::span<const int>(work.data(), n)));
    std::next_permutation(s.begin(), s.end());
  }
}

// Phase 1, memoized mode. A climb is deterministic, so every configuration on a
// trajectory shares its endpoint; ranks inside this block are recorded as they are
// passed and later climbs stop as soon as they reach one.
void climb_block_memoized(const QapInstance& inst, Block block, std::span<std::uint32_t> endpoint) {
  const std::size_t n = inst.size();
  std::fill(endpoint.begin() + block.begin, endpoint.begin() + block.end, kUnassigned);
  std::array<int, kMaxExhaustiveSize> start{};
  std::array<int, kMaxExhaustiveSize> work{};
  const std::span<int> s(start.data(), n);
  const std::span<int> p(work.data(), n);
  std::vector<std::uint64_t> trail;
  unrank_into(block.begin, s);
  auto in_block = [&](std::uint64_t r) { return r >= block.begin && r < block.end; };
  for (std::uint64_t r = block.begin; r < block.end; ++r, std::next_permutation(s.begin(), s.end())) {
    if (endpoint[r] != kUnassigned) continue;
    std::copy(s.begin(), s.end(), p.begin());
    trail.clear();
    std::uint64_t current = r;
    std::uint32_t result = kUnassigned;
    for (;;) {
      if (in_block(current) && endpoint[current] != kUnassigned) {
        result = endpoint[current];
        break;
      }
      trail.push_back(current);
      std::int64_t best = 0;
      std::size_t bi = 0, bj = 0;
      for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          const std::int64_t d = detail::swap_delta_unchecked(inst, p.data(), i, j);
          if (d < best) {
            best = d;
            bi = i;
            bj = j;
          }
        }
      if (best == 0) {
        result = static_cast<std::uint32_t>(current);
        break;
      }
      std::swap(p[bi], p[bj]);
      current = rank(std::span<const int>(p.data(), n));
    }
    for (std::uint64_t t : trail)
      if (in_block(t)) endpoint[t] = result;
  }
}

}  // namespace

std::size_t hill_climb_in_place(const QapInstance& inst, std::span<int> p) {
  const std::size_t n = inst.size();
  require(p.size() == n, "hill_climb: permutation size does not match instance");
  std::size_t moves = 0;
  for (;;) {
    std::int64_t best = 0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::int64_t d = detail::swap_delta_unchecked(inst, p.data(), i, j);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    if (best == 0) return moves;
    std::swap(p[bi], p[bj]);
    ++moves;
  }
}

Permutation hill_climb(const QapInstance& inst, const Permutation& start) {
  std::vector<int> p(start.items().begin(), start.items().end());
  hill_climb_in_place(inst, p);
  return Permutation(std::move(p));
}

BasinMap enumerate_basins(const QapInstance& inst, std::size_t workers, ClimbMode mode) {
  const std::size_t n = inst.size();
  if (n > kMaxExhaustiveSize)
    throw ResourceLimit("exhaustive enumeration supports n <= " + std::to_string(kMaxExhaustiveSize) +
                        ", got n = " + std::to_string(n));
  const std::uint64_t total = factorial(n);
  BasinMap bm;
  bm.n = n;
  bm.assignment.resize(total);
  const auto blocks = split_range(total, std::max<std::size_t>(1, workers));
  const std::span<std::uint32_t> endpoint(bm.assignment);
  run_blocks(blocks, [&](Block b) {
    if (mode == ClimbMode::reference)
      climb_block_reference(inst, b, endpoint);
    else
      climb_block_memoized(inst, b, endpoint);
  });

  // Merge: optima are the fixpoints, numbered by ascending rank.
  std::vector<std::uint32_t> optimum_ranks;
  for (std::uint64_t r = 0; r < total; ++r)
    if (bm.assignment[r] == r) optimum_ranks.push_back(static_cast<std::uint32_t>(r));

  std::vector<std::vector<std::uint64_t>> partial_sizes(blocks.size(),
                                                        std::vector<std::uint64_t>(optimum_ranks.size(), 0));
  // Per-block relabelling writes disjoint slices; sizes are reduced afterwards.
  std::vector<std::thread> threads;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    auto relabel = [&, k] {
      auto& sizes = partial_sizes[k];
      for (std::uint64_t r = blocks[k].begin; r < blocks[k].end; ++r) {
        const auto it = std::lower_bound(optimum_ranks.begin(), optimum_ranks.end(), bm.assignment[r]);
        const auto id = static_cast<std::uint32_t>(it - optimum_ranks.begin());
        bm.assignment[r] = id;
        ++sizes[id];
      }
    };
    if (blocks.size() == 1)
      relabel();
    else
      threads.emplace_back(relabel);
  }
  for (auto& t : threads) t.join();

  bm.optima.reserve(optimum_ranks.size());
  for (std::size_t id = 0; id < optimum_ranks.size(); ++id) {
    LocalOptimum o;
    o.id = static_cast<std::uint32_t>(id);
    o.rank = optimum_ranks[id];
    o.rep = unrank(n, o.rank);
    o.cost = cost(inst, o.rep);
    for (const auto& sizes : partial_sizes) o.basin_size += sizes[id];
    bm.optima.push_back(std::move(o));
  }
  return bm;
}

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  const char bytes[4] = {static_cast<char>(v), static_cast<char>(v >> 8), static_cast<char>(v >> 16),
                         static_cast<char>(v >> 24)};
  out.write(bytes, 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) throw ParseError("truncated basin file", static_cast<std::size_t>(in.gcount()));
  return b[0] | (b[1] << 8) | (b[2] << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void write_basin_binary(const BasinMap& bm, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(kBasinMagic.data(), kBasinMagic.size());
  put_u32(out, static_cast<std::uint32_t>(bm.n));
  const std::uint64_t count = bm.assignment.size();
  put_u32(out, static_cast<std::uint32_t>(count));
  put_u32(out, static_cast<std::uint32_t>(count >> 32));
  for (std::uint32_t id : bm.assignment) put_u32(out, id);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

BasinMap read_basin_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kBasinMagic) throw ParseError("bad basin file magic", 0);
  BasinMap bm;
  bm.n = get_u32(in);
  const std::uint64_t lo = get_u32(in);
  const std::uint64_t count = lo | (static_cast<std::uint64_t>(get_u32(in)) << 32);
  if (bm.n > kMaxExhaustiveSize || count != factorial(bm.n)) throw ParseError("basin file count is not n!", 8);
  bm.assignment.resize(count);
  for (auto& id : bm.assignment) id = get_u32(in);
  return bm;
}

std::string optima_roster_csv(const BasinMap& bm) {
  std::ostringstream out;
  out << "id,rank,cost,basin_size\n";
  for (const auto& o : bm.optima) out << o.id << ',' << o.rank << ',' << o.cost << ',' << o.basin_size << '\n';
  return out.str();
}

}  // namespace lonqap
