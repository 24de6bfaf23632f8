#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <numeric>

#include "lonqap/error.hpp"
#include "lonqap/generator.hpp"
#include "lonqap/instance_io.hpp"
#include "lonqap/landscape.hpp"
#include "oracles.hpp"

using namespace lonqap;

namespace {

QapInstance make(InstanceClass cls, std::size_t n, std::uint64_t seed) {
  GeneratorConfig c;
  c.cls = cls;
  c.n = n;
  c.seed = seed;
  return generate(c);
}

void check_against_oracle(const QapInstance& inst, const BasinMap& bm) {
  const auto ref = oracle::naive_landscape(inst);
  REQUIRE(bm.assignment == ref.assignment);
  REQUIRE(bm.optima.size() == ref.optima.size());
  for (std::size_t id = 0; id < ref.optima.size(); ++id) {
    REQUIRE(bm.optima[id].id == id);
    REQUIRE(bm.optima[id].rep == Permutation(ref.optima[id]));
    REQUIRE(bm.optima[id].cost == ref.costs[id]);
    REQUIRE(bm.optima[id].basin_size == ref.basin_sizes[id]);
  }
}

}  // namespace

TEST_CASE("hill climb with no flow leaves the start unchanged") {
  const QapInstance flat(make(InstanceClass::uniform, 5, 1).distances(), SquareMatrix(5));
  const Permutation s{3, 1, 4, 0, 2};
  CHECK(hill_climb(flat, s) == s);
}

TEST_CASE("hill climb is idempotent and monotone") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = make(seed % 2 ? InstanceClass::real_like : InstanceClass::uniform, 6, seed);
    for (std::uint64_t r = 0; r < factorial(6); r += 37) {
      const auto s = unrank(6, r);
      const auto end = hill_climb(inst, s);
      REQUIRE(hill_climb(inst, end) == end);
      REQUIRE(cost(inst, end) <= cost(inst, s));
      for (const auto& q : neighbors(end)) REQUIRE(cost(inst, q) >= cost(inst, end));
    }
  }
}

TEST_CASE("hill climb agrees with the full-recomputation oracle at n = 4") {
  const auto inst = make(InstanceClass::uniform, 4, 123);
  for (const auto& p : oracle::all_permutations(4))
    REQUIRE(hill_climb(inst, Permutation(p)) == Permutation(oracle::naive_hill_climb(inst, p)));
}

TEST_CASE("tie-breaking takes the first best move in scan order") {
  // cost(p) = 20 * B(p0, p1); B is 1 everywhere except B(2,3) = 9.
  SquareMatrix a(4), b(4, 1);
  a(0, 1) = a(1, 0) = 10;
  for (std::size_t i = 0; i < 4; ++i) b(i, i) = 0;
  b(2, 3) = b(3, 2) = 9;
  const QapInstance inst(std::move(a), std::move(b));
  CHECK(hill_climb(inst, Permutation{0, 1, 2, 3}) == Permutation{0, 1, 2, 3});
  // From (2,3,0,1) the swaps (0,2), (0,3), (1,2), (1,3) all drop 180 -> 20; (0,2) is first.
  CHECK(hill_climb(inst, Permutation{2, 3, 0, 1}) == Permutation{0, 3, 2, 1});
}

TEST_CASE("enumerate_basins basic contracts") {
  SUBCASE("flat landscape: every configuration is its own optimum") {
    const QapInstance flat(SquareMatrix(3, 1), SquareMatrix(3));
    const auto bm = enumerate_basins(flat);
    REQUIRE(bm.optima.size() == 6);
    for (const auto& o : bm.optima) CHECK(o.basin_size == 1);
  }
  SUBCASE("sum of basin sizes is n!") {
    for (std::size_t n = 2; n <= 7; ++n) {
      const auto bm = enumerate_basins(make(InstanceClass::real_like, n, n));
      std::uint64_t total = 0;
      for (const auto& o : bm.optima) {
        total += o.basin_size;
        REQUIRE(bm.assignment[o.rank] == o.id);
        REQUIRE(rank(o.rep) == o.rank);
      }
      REQUIRE(total == factorial(n));
      for (std::size_t i = 1; i < bm.optima.size(); ++i) REQUIRE(bm.optima[i - 1].rank < bm.optima[i].rank);
    }
  }
  SUBCASE("n = 1") {
    const auto bm = enumerate_basins(QapInstance(SquareMatrix(1), SquareMatrix(1)));
    CHECK(bm.optima.size() == 1);
    CHECK(bm.assignment == std::vector<std::uint32_t>{0});
  }
  SUBCASE("refuses sizes beyond the exhaustive limit") {
    const QapInstance big(SquareMatrix(13), SquareMatrix(13));
    CHECK_THROWS_AS(enumerate_basins(big), ResourceLimit);
  }
}

TEST_CASE("enumerate_basins matches the brute-force oracle at n = 5") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto cls = seed % 2 ? InstanceClass::real_like : InstanceClass::uniform;
    const auto inst = make(cls, 5, 1000 + seed);
    check_against_oracle(inst, enumerate_basins(inst));
  }
}

TEST_CASE("enumerate_basins is independent of workers and mode") {
  for (auto cls : {InstanceClass::uniform, InstanceClass::real_like}) {
    const auto inst = make(cls, 7, 31);
    const auto ref = enumerate_basins(inst, 1);
    for (std::size_t w : {2, 3, 8}) {
      CHECK(enumerate_basins(inst, w) == ref);
      CHECK(enumerate_basins(inst, w, ClimbMode::memoized) == ref);
    }
    CHECK(enumerate_basins(inst, 1, ClimbMode::memoized) == ref);
  }
  // Plateaus: the memoized mode must still agree when many moves tie.
  SquareMatrix a(6, 1), b(6, 2);
  for (std::size_t i = 0; i < 6; ++i) a(i, i) = b(i, i) = 0;
  a(0, 1) = a(1, 0) = 5;
  b(2, 4) = b(4, 2) = 7;
  const QapInstance plateau(std::move(a), std::move(b));
  const auto ref = enumerate_basins(plateau);
  CHECK(enumerate_basins(plateau, 4, ClimbMode::memoized) == ref);
  check_against_oracle(plateau, ref);
}

TEST_CASE("basin files") {
  const auto dir = std::filesystem::temp_directory_path() / "lonqap_test_landscape";
  std::filesystem::create_directories(dir);
  const auto inst = make(InstanceClass::uniform, 6, 4);
  const auto bm = enumerate_basins(inst);
  write_basin_binary(bm, dir / "basins.bin");
  CHECK(std::filesystem::file_size(dir / "basins.bin") == 16 + 4 * factorial(6));
  const auto bytes = read_text_file(dir / "basins.bin");
  CHECK(bytes.substr(0, 4) == "LONB");
  CHECK(static_cast<unsigned char>(bytes[4]) == 6);
  const auto back = read_basin_binary(dir / "basins.bin");
  CHECK(back.n == 6);
  CHECK(back.assignment == bm.assignment);

  const auto csv = optima_roster_csv(bm);
  CHECK(csv.rfind("id,rank,cost,basin_size\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(bm.optima.size() + 1));
  std::filesystem::remove_all(dir);
}
