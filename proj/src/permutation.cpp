#include "lonqap/permutation.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "lonqap/error.hpp"

namespace lonqap {

namespace {

constexpr std::array<std::uint64_t, kMaxRankableSize + 1> make_factorials() {
  std::array<std::uint64_t, kMaxRankableSize + 1> f{};
  f[0] = 1;
  for (std::size_t i = 1; i < f.size(); ++i) f[i] = f[i - 1] * i;
  return f;
}

constexpr auto kFactorials = make_factorials();

bool is_bijection(std::span<const int> items) {
  std::vector<bool> seen(items.size(), false);
  for (int v : items) {
    if (v < 0 || static_cast<std::size_t>(v) >= items.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

}  // namespace

std::uint64_t factorial(std::size_t n) {
  require(n <= kMaxRankableSize, "factorial: n exceeds 64-bit range");
  return kFactorials[n];
}

Permutation::Permutation(std::vector<int> items) : items_(std::move(items)) {
  require(is_bijection(items_), "Permutation: items must be a bijection of 0..n-1");
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<int> items(n);
  std::iota(items.begin(), items.end(), 0);
  return Permutation(std::move(items));
}

Permutation Permutation::swapped(std::size_t i, std::size_t j) const {
  require(i < size() && j < size(), "Permutation::swapped: index out of range");
  Permutation q = *this;
  std::swap(q.items_[i], q.items_[j]);
  return q;
}

std::string Permutation::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(items_[i]);
  }
  return s + ")";
}

void lehmer_code(std::span<const int> p, std::span<int> code) {
  const std::size_t n = p.size();
  for (std::size_t k = 0; k < n; ++k) {
    int c = 0;
    for (std::size_t m = k + 1; m < n; ++m) c += p[m] < p[k];
    code[k] = c;
  }
}

std::uint64_t rank(std::span<const int> p) {
  const std::size_t n = p.size();
  require(n <= kMaxRankableSize, "rank: permutation too long for a 64-bit rank");
  std::uint64_t r = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::uint64_t c = 0;
    for (std::size_t m = k + 1; m < n; ++m) c += p[m] < p[k];
    r += c * kFactorials[n - 1 - k];
  }
  return r;
}

void unrank_into(std::uint64_t r, std::span<int> out) {
  const std::size_t n = out.size();
  require(n <= kMaxRankableSize, "unrank: n exceeds 64-bit range");
  require(r < kFactorials[n], "unrank: rank out of range [0, n!)");
  // Remaining items kept sorted; digit k selects the k-th smallest.
  std::array<int, kMaxRankableSize> pool{};
  for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<int>(i);
  std::size_t remaining = n;
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t f = kFactorials[n - 1 - k];
    const auto digit = static_cast<std::size_t>(r / f);
    r %= f;
    out[k] = pool[digit];
    std::copy(pool.begin() + digit + 1, pool.begin() + remaining, pool.begin() + digit);
    --remaining;
  }
}

Permutation unrank(std::size_t n, std::uint64_t r) {
  std::vector<int> items(n);
  unrank_into(r, items);
  return Permutation(std::move(items));
}

std::uint64_t rank_after_swap(std::span<const int> p, std::span<const int> code,
                              std::uint64_t p_rank, std::size_t i, std::size_t j) {
  const std::size_t n = p.size();
  const int x = p[i];
  const int y = p[j];
  // Digits before i and after j are unaffected by the exchange.
  std::int64_t delta = 0;
  int below_y = 0;
  for (std::size_t m = i + 1; m < n; ++m) below_y += p[m] < y;
  const int new_i = below_y + (x < y);
  delta += static_cast<std::int64_t>(new_i - code[i]) * static_cast<std::int64_t>(kFactorials[n - 1 - i]);
  for (std::size_t k = i + 1; k < j; ++k) {
    const int d = (x < p[k]) - (y < p[k]);
    delta += static_cast<std::int64_t>(d) * static_cast<std::int64_t>(kFactorials[n - 1 - k]);
  }
  int below_x = 0;
  for (std::size_t m = j + 1; m < n; ++m) below_x += p[m] < x;
  delta += static_cast<std::int64_t>(below_x - code[j]) * static_cast<std::int64_t>(kFactorials[n - 1 - j]);
  return static_cast<std::uint64_t>(static_cast<std::int64_t>(p_rank) + delta);
}

std::vector<Permutation> neighbors(const Permutation& p) {
  const std::size_t n = p.size();
  require(n >= 2, "neighbors: n must be at least 2");
  std::vector<Permutation> out;
  out.reserve(neighborhood_size(n));
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.push_back(p.swapped(i, j));
  return out;
}

}  // namespace lonqap
