#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lonqap/error.hpp"
#include "lonqap/experiment.hpp"
#include "lonqap/landscape.hpp"
#include "lonqap/lon.hpp"

using namespace lonqap;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.n_uniform = cfg.n_real_like = 5;
  cfg.count = 2;
  cfg.master_seed = 9;
  return cfg;
}

std::string strip_timing(const std::vector<ExperimentRecord>& r) { return records_csv(r, false); }

ExperimentRecord record(InstanceClass c, Detector d, double q) {
  ExperimentRecord r;
  r.cls = c;
  r.algorithm = d;
  r.q = q;
  r.n = 5;
  r.n_optima = 3;
  return r;
}

}  // namespace

TEST_CASE("five-number summary") {
  const auto s = five_number_summary({0.5, 0.1, 0.4, 0.2, 0.3});
  CHECK(s.count == 5);
  CHECK(s.min == doctest::Approx(0.1));
  CHECK(s.q1 == doctest::Approx(0.2));
  CHECK(s.median == doctest::Approx(0.3));
  CHECK(s.q3 == doctest::Approx(0.4));
  CHECK(s.max == doctest::Approx(0.5));
  const auto even = five_number_summary({1, 2, 3, 4});
  CHECK(even.median == doctest::Approx(2.5));
  CHECK(even.q1 == doctest::Approx(1.75));
}

TEST_CASE("Mann-Whitney U") {
  const std::vector<double> hi{0.7, 0.72, 0.75}, lo{0.3, 0.33, 0.35};
  auto r = mann_whitney_greater(hi, lo);
  CHECK(r.exact);
  CHECK(r.u == 9.0);
  CHECK(r.p_value == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(mann_whitney_greater(lo, hi).p_value == doctest::Approx(1.0));

  const std::vector<double> same(6, 0.4);
  CHECK(mann_whitney_greater(same, same).p_value >= 0.5);

  std::vector<double> big_same(15, 0.4);
  r = mann_whitney_greater(big_same, big_same);
  CHECK_FALSE(r.exact);
  CHECK(r.p_value >= 0.5);

  // Normal approximation on fully separated groups of 10: z = (100 - 50 - 0.5) / sqrt(175).
  std::vector<double> x, y;
  for (int i = 0; i < 10; ++i) {
    x.push_back(1.0 + i);
    y.push_back(-1.0 - i);
  }
  r = mann_whitney_greater(x, y);
  CHECK_FALSE(r.exact);
  CHECK(r.u == 100.0);
  CHECK(r.p_value == doctest::Approx(0.5 * std::erfc(49.5 / std::sqrt(175.0) / std::sqrt(2.0))).epsilon(1e-12));
  CHECK(r.p_value < 0.001);
}

TEST_CASE("Mann-Whitney exact p matches brute-force enumeration with ties") {
  // x = {2, 3, 3}, y = {1, 3, 4}: U = 1 (2>1) + 0.5*... enumerate every labelling.
  const std::vector<double> x{2, 3, 3}, y{1, 3, 4};
  const std::vector<double> pooled{2, 3, 3, 1, 3, 4};
  auto u_of = [](const std::vector<double>& a, const std::vector<double>& b) {
    double u = 0;
    for (double p : a)
      for (double q : b) u += p > q ? 1.0 : (p == q ? 0.5 : 0.0);
    return u;
  };
  const double u_obs = u_of(x, y);
  int at_least = 0, total = 0;
  for (int mask = 0; mask < 64; ++mask) {
    if (__builtin_popcount(mask) != 3) continue;
    std::vector<double> a, b;
    for (int i = 0; i < 6; ++i) (mask >> i & 1 ? a : b).push_back(pooled[i]);
    ++total;
    at_least += u_of(a, b) >= u_obs - 1e-12;
  }
  const auto r = mann_whitney_greater(x, y);
  CHECK(r.u == u_obs);
  CHECK(r.p_value == doctest::Approx(static_cast<double>(at_least) / total).epsilon(1e-12));
}

TEST_CASE("config parsing") {
  const auto cfg = parse_experiment_config(
      "# desk run\nclasses = uniform, real-like\nn_uniform=6\nn_real_like = 7\ncount=3\nmaster_seed=42\n"
      "alpha=0.1\nalgorithms=greedy\nworkers=2\nrl_exponent=1.5\nspins=10\n");
  CHECK(cfg.classes.size() == 2);
  CHECK(cfg.size_for(InstanceClass::uniform) == 6);
  CHECK(cfg.size_for(InstanceClass::real_like) == 7);
  CHECK(cfg.count == 3);
  CHECK(cfg.master_seed == 42);
  CHECK(cfg.alpha == 0.1);
  CHECK(cfg.algorithms == std::vector<Detector>{Detector::greedy});
  CHECK(cfg.generator.rl_exponent == 1.5);
  CHECK(cfg.spinglass.spins == 10);
  CHECK_THROWS_AS(parse_experiment_config("bogus=1\n"), ParseError);
  CHECK_THROWS_AS(parse_experiment_config("count=abc\n"), ParseError);
  CHECK_THROWS_AS(parse_experiment_config("classes=weird\n"), ParseError);
  CHECK_THROWS_AS(parse_experiment_config("just text\n"), ParseError);

  auto bad = small_config();
  bad.n_uniform = 13;
  CHECK_THROWS_AS(bad.validate(), ResourceLimit);
  bad = small_config();
  bad.alpha = 2.0;
  CHECK_THROWS_AS(bad.validate(), ContractViolation);
}

TEST_CASE("run_experiment") {
  const auto cfg = small_config();
  const auto records = run_experiment(cfg);
  REQUIRE(records.size() == 8);
  CHECK(records[0].cls == InstanceClass::uniform);
  CHECK(records[0].algorithm == Detector::greedy);
  CHECK(records[1].algorithm == Detector::spinglass);
  CHECK(records[7].cls == InstanceClass::real_like);
  for (const auto& r : records) {
    if (!r.error.empty()) continue;
    CHECK(r.n_optima >= 1);
    CHECK(*r.q >= -0.5);
    CHECK(*r.q < 1.0);
  }

  SUBCASE("deterministic modulo timing, also with more workers") {
    CHECK(strip_timing(run_experiment(cfg)) == strip_timing(records));
    auto parallel = cfg;
    parallel.workers = 3;
    CHECK(strip_timing(run_experiment(parallel)) == strip_timing(records));
  }

  SUBCASE("greedy Q equals an independent module-level rerun") {
    auto greedy_only = cfg;
    greedy_only.algorithms = {Detector::greedy};
    greedy_only.count = 4;
    for (const auto& r : run_experiment(greedy_only)) {
      GeneratorConfig gen;
      gen.cls = r.cls;
      gen.n = r.n;
      gen.seed = r.instance_seed;
      const auto inst = generate(gen);
      const auto filtered = filter_lon(build_lon(inst, enumerate_basins(inst)), r.alpha);
      CHECK(r.n_optima == filtered.nodes.size());
      CHECK(r.n_edges_filtered == filtered.graph.edges.size());
      if (filtered.graph.edges.empty()) {
        CHECK(r.error == "undefined_modularity");
        continue;
      }
      CHECK(*r.q == modularity(filtered.graph, greedy_modularity(filtered.graph).assignment));
    }
  }

  SUBCASE("record count with several spin-glass seeds") {
    auto multi = cfg;
    multi.spinglass_seeds = 3;
    multi.classes = {InstanceClass::real_like};
    CHECK(run_experiment(multi).size() == 2 * (1 + 3));
  }
}

TEST_CASE("tiny instances yield error rows instead of aborting") {
  // At n = 3 these seeds give single-optimum landscapes, so no inter-basin edges.
  ExperimentConfig cfg;
  cfg.n_uniform = cfg.n_real_like = 3;
  cfg.count = 2;
  cfg.master_seed = 0;
  const auto records = run_experiment(cfg);
  REQUIRE(records.size() == 8);
  for (const auto& r : records) {
    CHECK(r.error == "undefined_modularity");
    CHECK_FALSE(r.q.has_value());
  }
  const auto back = parse_records_csv(records_csv(records));
  CHECK(back.size() == 8);
  CHECK_FALSE(back[0].q.has_value());
}

TEST_CASE("records CSV round trip and summaries") {
  const auto records = run_experiment(small_config());
  const auto csv = records_csv(records);
  CHECK(csv.rfind("class,n,instance_seed,algorithm,alpha,n_optima,n_edges_filtered,n_communities,q,wall_ms,error\n", 0) == 0);
  const auto back = parse_records_csv(csv);
  REQUIRE(back.size() == records.size());
  CHECK(records_csv(back, false) == records_csv(records, false));
  CHECK(summary_csv(summarize(back)) == summary_csv(summarize(records)));
  CHECK_THROWS_AS(parse_records_csv("nope\n1,2\n"), ParseError);

  std::vector<ExperimentRecord> synthetic;
  for (double q : {0.1, 0.2, 0.3, 0.4, 0.5}) synthetic.push_back(record(InstanceClass::uniform, Detector::greedy, q));
  for (double q : {0.6, 0.7, 0.8, 0.9, 0.95}) synthetic.push_back(record(InstanceClass::real_like, Detector::greedy, q));
  const auto s = summarize(synthetic);
  REQUIRE(s.groups.size() == 2);
  CHECK(s.groups[0].stats.median == doctest::Approx(0.3));
  CHECK(s.groups[0].stats.q1 == doctest::Approx(0.2));
  REQUIRE(s.tests.size() == 1);
  CHECK(s.tests[0].result.exact);
  CHECK(s.tests[0].result.p_value == doctest::Approx(1.0 / 252.0));

  synthetic.pop_back();
  const auto skipped = summarize(synthetic);
  CHECK(skipped.tests.empty());
  CHECK_FALSE(skipped.warnings.empty());
}
