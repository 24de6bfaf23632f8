#pragma once

#include <cstdint>
#include <string>

#include "lonqap/qap.hpp"

namespace lonqap {

struct GeneratorConfig {
  std::size_t n = 8;
  std::uint64_t seed = 0;
  InstanceClass cls = InstanceClass::uniform;
  std::int64_t uniform_max = 100;
  double rl_grid = 100.0;
  double rl_exponent = 2.0;
  double rl_sparsity = 0.0;

  void validate() const;
};

/// Symmetric, zero-diagonal; upper-triangle entries i.i.d. uniform on {1..uniform_max}.
/// Draw order: A's upper triangle row-major, then B's.
QapInstance gen_uniform(const GeneratorConfig& cfg);

/// Euclidean distances between n points uniform in [0, grid]^2 (rounded), and
/// log-uniform flows round(10^(r * exponent)), zeroed with probability sparsity.
/// Draw order: x0, y0, x1, y1, ...; then per upper-triangle pair (u_sparsity, r).
QapInstance gen_real_like(const GeneratorConfig& cfg);

/// Dispatches on cfg.cls.
QapInstance generate(const GeneratorConfig& cfg);

/// `key=value` lines describing the generator parameters.
std::string metadata_text(const GeneratorConfig& cfg);

}  // namespace lonqap
