#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "lonqap/error.hpp"
#include "lonqap/generator.hpp"
#include "lonqap/qap.hpp"
#include "lonqap/rng.hpp"
#include "oracles.hpp"

using namespace lonqap;

namespace {

QapInstance two_by_two() {
  return QapInstance(SquareMatrix(2, {0, 1, 1, 0}), SquareMatrix(2, {0, 3, 3, 0}));
}

// Random possibly asymmetric instance with non-zero diagonals, to exercise every delta term.
QapInstance random_instance(std::size_t n, Xoshiro256& rng) {
  SquareMatrix a(n), b(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = rng.uniform_int(0, 50);
      b(i, j) = rng.uniform_int(0, 50);
    }
  return QapInstance(std::move(a), std::move(b));
}

Permutation random_permutation(std::size_t n, Xoshiro256& rng) {
  return unrank(n, rng.below(factorial(n)));
}

}  // namespace

TEST_CASE("cost") {
  CHECK(cost(two_by_two(), Permutation{0, 1}) == 6);
  CHECK(oracle::naive_cost(two_by_two(), {0, 1}) == 6);

  const QapInstance one(SquareMatrix(1, {7}), SquareMatrix(1, {9}));
  CHECK(cost(one, Permutation{0}) == 63);

  GeneratorConfig cfg;
  cfg.n = 6;
  cfg.seed = 3;
  const auto g = gen_uniform(cfg);
  const QapInstance no_flow(g.distances(), SquareMatrix(6));
  CHECK(cost(no_flow, Permutation{5, 4, 3, 2, 1, 0}) == 0);

  CHECK_THROWS_AS(cost(two_by_two(), Permutation{0, 1, 2}), ContractViolation);
}

TEST_CASE("cost does not overflow at the documented ceiling") {
  // n = 12 with every entry 10^4: 144 * 10^8 fits easily in 64 bits.
  const QapInstance big(SquareMatrix(12, 10000), SquareMatrix(12, 10000));
  CHECK(cost(big, Permutation::identity(12)) == 144LL * 100000000LL);
}

TEST_CASE("swap_delta") {
  CHECK(swap_delta(two_by_two(), Permutation{0, 1}, 0, 1) == 0);

  const QapInstance no_dist(SquareMatrix(5), SquareMatrix(5, 3));
  CHECK(swap_delta(no_dist, Permutation{4, 2, 0, 1, 3}, 1, 3) == 0);

  CHECK_THROWS_AS(swap_delta(two_by_two(), Permutation{0, 1}, 1, 1), ContractViolation);
  CHECK_THROWS_AS(swap_delta(two_by_two(), Permutation{0, 1}, 1, 0), ContractViolation);
  CHECK_THROWS_AS(swap_delta(two_by_two(), Permutation{0, 1}, 0, 2), ContractViolation);
}

TEST_CASE("swap_delta equals full recomputation (property)") {
  Xoshiro256 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = random_instance(6, rng);
    const auto p = random_permutation(6, rng);
    const auto i = static_cast<std::size_t>(rng.below(5));
    const auto j = i + 1 + static_cast<std::size_t>(rng.below(5 - i));
    std::vector<int> q(p.items().begin(), p.items().end());
    const std::int64_t before = oracle::naive_cost(inst, q);
    std::swap(q[i], q[j]);
    CHECK(swap_delta(inst, p, i, j) == oracle::naive_cost(inst, q) - before);
  }
  // Every pair on larger instances too.
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.below(10);
    const auto inst = random_instance(n, rng);
    const auto p = random_permutation(n, rng);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) REQUIRE(swap_delta(inst, p, i, j) == cost(inst, p.swapped(i, j)) - cost(inst, p));
  }
}

TEST_CASE("rank and unrank") {
  CHECK(rank(Permutation{0, 1, 2}) == 0);
  CHECK(rank(Permutation{2, 1, 0}) == 5);
  CHECK(rank(Permutation{1, 2, 0}) == 3);
  CHECK_THROWS_AS(unrank(3, 6), ContractViolation);
  CHECK(unrank(0, 0).size() == 0);

  SUBCASE("exhaustive round trip and lexicographic order for n <= 6") {
    for (std::size_t n = 1; n <= 6; ++n) {
      const auto perms = oracle::all_permutations(n);
      REQUIRE(perms.size() == factorial(n));
      for (std::uint64_t r = 0; r < perms.size(); ++r) {
        REQUIRE(unrank(n, r) == Permutation(perms[r]));
        REQUIRE(rank(Permutation(perms[r])) == r);
      }
    }
  }
  SUBCASE("random round trip for n <= 12") {
    Xoshiro256 rng(99);
    for (int t = 0; t < 2000; ++t) {
      const std::size_t n = 1 + rng.below(12);
      const std::uint64_t r = rng.below(factorial(n));
      REQUIRE(rank(unrank(n, r)) == r);
    }
  }
}

TEST_CASE("rank_after_swap matches rank of the swapped permutation") {
  Xoshiro256 rng(5);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + rng.below(11);
    const auto p = random_permutation(n, rng);
    std::vector<int> code(n);
    lehmer_code(p.items(), code);
    const auto r = rank(p);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) REQUIRE(rank_after_swap(p.items(), code, r, i, j) == rank(p.swapped(i, j)));
  }
}

TEST_CASE("neighbors") {
  const auto nb = neighbors(Permutation{0, 1, 2});
  REQUIRE(nb.size() == 3);
  CHECK(nb[0] == Permutation{1, 0, 2});
  CHECK(nb[1] == Permutation{2, 1, 0});
  CHECK(nb[2] == Permutation{0, 2, 1});
  CHECK(neighbors(Permutation{1, 0}).size() == 1);
  CHECK(neighbors(Permutation::identity(9)).size() == 36);
  CHECK_THROWS_AS(neighbors(Permutation{0}), ContractViolation);
}

TEST_CASE("neighbor relation is symmetric with distinct members") {
  for (std::size_t n = 2; n <= 5; ++n)
    for (const auto& raw : oracle::all_permutations(n)) {
      const Permutation p(raw);
      const auto nb = neighbors(p);
      REQUIRE(nb.size() == neighborhood_size(n));
      std::set<std::vector<int>> distinct;
      for (const auto& q : nb) {
        distinct.insert(std::vector<int>(q.items().begin(), q.items().end()));
        const auto back = neighbors(q);
        REQUIRE(std::find(back.begin(), back.end(), p) != back.end());
      }
      REQUIRE(distinct.size() == nb.size());
    }
}

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(QapInstance(SquareMatrix(2), SquareMatrix(3)), ContractViolation);
  CHECK_THROWS_AS(QapInstance(SquareMatrix(2, {0, -1, 1, 0}), SquareMatrix(2)), ContractViolation);
  CHECK_THROWS_AS(Permutation({0, 0, 1}), ContractViolation);
  CHECK_THROWS_AS(Permutation({0, 3, 1}), ContractViolation);
  CHECK(parse_instance_class("real-like") == InstanceClass::real_like);
}
