#include "lonqap/generator.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "lonqap/error.hpp"
#include "lonqap/rng.hpp"

namespace lonqap {

namespace {

std::string instance_label(const GeneratorConfig& cfg) {
  return std::string(to_string(cfg.cls)) + "_n" + std::to_string(cfg.n) + "_s" + std::to_string(cfg.seed);
}

std::int64_t round_to_int(double x) { return static_cast<std::int64_t>(std::llround(x)); }

}  // namespace

void GeneratorConfig::validate() const {
  require(n >= 2, "GeneratorConfig: n must be at least 2");
  require(uniform_max >= 1, "GeneratorConfig: uniform_max must be at least 1");
  require(rl_exponent > 0.0, "GeneratorConfig: rl_exponent must be positive");
  require(rl_grid > 0.0, "GeneratorConfig: rl_grid must be positive");
  require(rl_sparsity >= 0.0 && rl_sparsity <= 1.0, "GeneratorConfig: rl_sparsity must lie in [0,1]");
}

QapInstance gen_uniform(const GeneratorConfig& cfg) {
  cfg.validate();
  require(cfg.cls == InstanceClass::uniform, "gen_uniform: config class must be uniform");
  Xoshiro256 rng(cfg.seed);
  auto fill = [&](SquareMatrix& m) {
    for (std::size_t i = 0; i < cfg.n; ++i)
      for (std::size_t j = i + 1; j < cfg.n; ++j) m(i, j) = m(j, i) = rng.uniform_int(1, cfg.uniform_max);
  };
  SquareMatrix a(cfg.n), b(cfg.n);
  fill(a);
  fill(b);
  return QapInstance(std::move(a), std::move(b), instance_label(cfg), InstanceClass::uniform);
}

QapInstance gen_real_like(const GeneratorConfig& cfg) {
  cfg.validate();
  require(cfg.cls == InstanceClass::real_like, "gen_real_like: config class must be real_like");
  Xoshiro256 rng(cfg.seed);
  std::vector<double> x(cfg.n), y(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    x[i] = rng.uniform01() * cfg.rl_grid;
    y[i] = rng.uniform01() * cfg.rl_grid;
  }
  SquareMatrix a(cfg.n), b(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i)
    for (std::size_t j = i + 1; j < cfg.n; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      a(i, j) = a(j, i) = round_to_int(std::sqrt(dx * dx + dy * dy));
    }
  for (std::size_t i = 0; i < cfg.n; ++i)
    for (std::size_t j = i + 1; j < cfg.n; ++j) {
      const double u = rng.uniform01();
      const double r = rng.uniform01();
      const std::int64_t flow = u < cfg.rl_sparsity ? 0 : round_to_int(std::pow(10.0, r * cfg.rl_exponent));
      b(i, j) = b(j, i) = flow;
    }
  return QapInstance(std::move(a), std::move(b), instance_label(cfg), InstanceClass::real_like);
}

QapInstance generate(const GeneratorConfig& cfg) {
  switch (cfg.cls) {
    case InstanceClass::uniform: return gen_uniform(cfg);
    case InstanceClass::real_like: return gen_real_like(cfg);
    case InstanceClass::external: break;
  }
  throw ContractViolation("generate: class must be uniform or real_like");
}

std::string metadata_text(const GeneratorConfig& cfg) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "class=%s\nn=%zu\nseed=%llu\nuniform_max=%lld\nrl_grid=%.17g\nrl_exponent=%.17g\n"
                "rl_sparsity=%.17g\n",
                std::string(to_string(cfg.cls)).c_str(), cfg.n, static_cast<unsigned long long>(cfg.seed),
                static_cast<long long>(cfg.uniform_max), cfg.rl_grid, cfg.rl_exponent, cfg.rl_sparsity);
  return buf;
}

}  // namespace lonqap
