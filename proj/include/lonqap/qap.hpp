#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lonqap/permutation.hpp"

namespace lonqap {

enum class InstanceClass { uniform, real_like, external };

std::string_view to_string(InstanceClass c);
/// Accepts "uniform", "real_like" / "real-like" and "external".
InstanceClass parse_instance_class(std::string_view s);

/// Dense row-major n x n matrix of non-negative integers.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, std::int64_t fill = 0) : n_(n), data_(n * n, fill) {}
  SquareMatrix(std::size_t n, std::vector<std::int64_t> row_major);

  std::size_t size() const noexcept { return n_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  std::span<const std::int64_t> data() const noexcept { return data_; }

  bool is_symmetric() const;
  bool has_zero_diagonal() const;

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> data_;
};

/// A QAP instance: distance matrix A and flow matrix B, both n x n.
///
/// Cost of a permutation p (position -> item) is sum_ij A(i,j) * B(p[i], p[j]).
class QapInstance {
 public:
  QapInstance(SquareMatrix distances, SquareMatrix flows, std::string label = {},
              InstanceClass cls = InstanceClass::external);

  std::size_t size() const noexcept { return distances_.size(); }
  const SquareMatrix& distances() const noexcept { return distances_; }
  const SquareMatrix& flows() const noexcept { return flows_; }
  const std::string& label() const noexcept { return label_; }
  InstanceClass instance_class() const noexcept { return class_; }

  /// Equality on the (n, A, B) triple.
  bool same_problem(const QapInstance& other) const {
    return distances_ == other.distances_ && flows_ == other.flows_;
  }

 private:
  SquareMatrix distances_;
  SquareMatrix flows_;
  std::string label_;
  InstanceClass class_;
};

namespace detail {

/// swap_delta without argument checks; requires i < j < n = p.size().
inline std::int64_t swap_delta_unchecked(const QapInstance& inst, const int* p, std::size_t r, std::size_t s) {
  const std::size_t n = inst.size();
  const std::int64_t* a = inst.distances().data().data();
  const std::int64_t* b = inst.flows().data().data();
  const std::size_t pr = static_cast<std::size_t>(p[r]);
  const std::size_t ps = static_cast<std::size_t>(p[s]);
  const std::int64_t* ar = a + r * n;
  const std::int64_t* as = a + s * n;
  const std::int64_t* br = b + pr * n;
  const std::int64_t* bs = b + ps * n;
  // Terms touching positions r or s; general (asymmetric) form.
  std::int64_t d = ar[r] * (bs[ps] - br[pr]) + as[s] * (br[pr] - bs[ps]) + ar[s] * (bs[pr] - br[ps]) +
                   as[r] * (br[ps] - bs[pr]);
  for (std::size_t k = 0; k < n; ++k) {
    if (k == r || k == s) continue;
    const std::size_t pk = static_cast<std::size_t>(p[k]);
    const std::int64_t* ak = a + k * n;
    const std::int64_t* bk = b + pk * n;
    d += ak[r] * (bk[ps] - bk[pr]) + ak[s] * (bk[pr] - bk[ps]) + ar[k] * (bs[pk] - br[pk]) +
         as[k] * (br[pk] - bs[pk]);
  }
  return d;
}

}  // namespace detail

std::int64_t cost(const QapInstance& inst, std::span<const int> p);
inline std::int64_t cost(const QapInstance& inst, const Permutation& p) { return cost(inst, p.items()); }

/// cost(p with positions i, j exchanged) - cost(p), in O(n).
std::int64_t swap_delta(const QapInstance& inst, std::span<const int> p, std::size_t i, std::size_t j);
inline std::int64_t swap_delta(const QapInstance& inst, const Permutation& p, std::size_t i, std::size_t j) {
  return swap_delta(inst, p.items(), i, j);
}

}  // namespace lonqap
