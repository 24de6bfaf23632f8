#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace lonqap {

/// Largest n whose n! fits in a 64-bit rank.
inline constexpr std::size_t kMaxRankableSize = 20;

std::uint64_t factorial(std::size_t n);

/// A configuration of the search space. Position i holds the item assigned to i.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> items);
  Permutation(std::initializer_list<int> items) : Permutation(std::vector<int>(items)) {}

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return items_.size(); }
  int operator[](std::size_t i) const { return items_[i]; }
  std::span<const int> items() const noexcept { return items_; }

  /// Copy with the contents of positions i and j exchanged.
  Permutation swapped(std::size_t i, std::size_t j) const;

  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> items_;
};

/// Lexicographic index of p among all permutations of its size.
std::uint64_t rank(std::span<const int> p);
inline std::uint64_t rank(const Permutation& p) { return rank(p.items()); }

Permutation unrank(std::size_t n, std::uint64_t r);
/// Writes the permutation of rank r into out (out.size() is n).
void unrank_into(std::uint64_t r, std::span<int> out);

/// Lehmer digits: code[k] = #{m > k : p[m] < p[k]}.
void lehmer_code(std::span<const int> p, std::span<int> code);

/// Rank of p with positions i < j swapped, in O(n), given p's rank and Lehmer code.
std::uint64_t rank_after_swap(std::span<const int> p, std::span<const int> code,
                              std::uint64_t p_rank, std::size_t i, std::size_t j);

/// The 2-opt swap neighborhood, in (i, j) scan order with i < j.
std::vector<Permutation> neighbors(const Permutation& p);

inline std::size_t neighborhood_size(std::size_t n) { return n * (n - 1) / 2; }

}  // namespace lonqap
