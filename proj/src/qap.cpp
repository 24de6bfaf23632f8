#include "lonqap/qap.hpp"

#include <algorithm>

#include "lonqap/error.hpp"

namespace lonqap {

std::string_view to_string(InstanceClass c) {
  switch (c) {
    case InstanceClass::uniform: return "uniform";
    case InstanceClass::real_like: return "real_like";
    case InstanceClass::external: return "external";
  }
  return "external";
}

InstanceClass parse_instance_class(std::string_view s) {
  if (s == "uniform" || s == "uni") return InstanceClass::uniform;
  if (s == "real_like" || s == "real-like" || s == "rl") return InstanceClass::real_like;
  if (s == "external") return InstanceClass::external;
  throw ContractViolation("unknown instance class: " + std::string(s));
}

SquareMatrix::SquareMatrix(std::size_t n, std::vector<std::int64_t> row_major)
    : n_(n), data_(std::move(row_major)) {
  require(data_.size() == n * n, "SquareMatrix: expected n*n entries");
}

bool SquareMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool SquareMatrix::has_zero_diagonal() const {
  for (std::size_t i = 0; i < n_; ++i)
    if ((*this)(i, i) != 0) return false;
  return true;
}

QapInstance::QapInstance(SquareMatrix distances, SquareMatrix flows, std::string label, InstanceClass cls)
    : distances_(std::move(distances)), flows_(std::move(flows)), label_(std::move(label)), class_(cls) {
  require(distances_.size() >= 1, "QapInstance: n must be positive");
  require(distances_.size() == flows_.size(), "QapInstance: A and B must both be n x n");
  auto non_negative = [](const SquareMatrix& m) {
    return std::all_of(m.data().begin(), m.data().end(), [](std::int64_t v) { return v >= 0; });
  };
  require(non_negative(distances_) && non_negative(flows_), "QapInstance: entries must be non-negative");
}

std::int64_t cost(const QapInstance& inst, std::span<const int> p) {
  const std::size_t n = inst.size();
  require(p.size() == n, "cost: permutation size does not match instance");
  const auto& a = inst.distances();
  const auto& b = inst.flows();
  std::int64_t total = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) total += a(i, j) * b(p[i], p[j]);
  return total;
}

std::int64_t swap_delta(const QapInstance& inst, std::span<const int> p, std::size_t i, std::size_t j) {
  require(p.size() == inst.size(), "swap_delta: permutation size does not match instance");
  require(i < j && j < inst.size(), "swap_delta: need 0 <= i < j < n");
  return detail::swap_delta_unchecked(inst, p.data(), i, j);
}

}  // namespace lonqap
