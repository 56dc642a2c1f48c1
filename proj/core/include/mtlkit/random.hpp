#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mtlkit/fo.hpp"
#include "mtlkit/mtl.hpp"

namespace mtlkit {

struct RandomMtlConfig {
  std::vector<std::string> props{"p", "q"};
  std::size_t max_size = 12;
  std::vector<Rational> constants{Rational(1, 4), Rational(1, 2), Rational(1), Rational(2)};
  bool derived = true;    // F/G/P/H, F[=q], K+/K-
  bool unbounded = true;  // allow (a,inf) constraints
  bool past = true;
};

/// Random formula with at most cfg.max_size AST nodes.
Mtl random_mtl(std::mt19937_64& rng, const RandomMtlConfig& cfg);

/// Random operator constraint with endpoints drawn from cfg.constants (and 0, inf).
Interval random_constraint(std::mt19937_64& rng, const RandomMtlConfig& cfg);

}  // namespace mtlkit
