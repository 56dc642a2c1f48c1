#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mtlkit/mtl.hpp"

namespace mtlkit {

/// Values of the metavariables of a rewrite rule.
struct RuleInstance {
  Mtl phi, psi, chi, theta;
  Rational q = Rational(1);   // bound of the bounded operator
  Rational q2 = Rational(1);  // second constant (length of an interval beyond q)
};

/// An equivalence lhs <-> rhs between formula schemes.
struct Rule {
  std::string name;
  std::string family;  // normal-form, extract, skeleton, limit, split, example
  bool displayed = false;  // stated as such in the source construction (not derived here)
  std::function<Mtl(const RuleInstance&)> lhs;
  std::function<Mtl(const RuleInstance&)> rhs;
};

/// Every rule used by the separation pipeline together with the displayed
/// equivalences it is built from. Past duals (suffix ".past") are generated by mirroring.
const std::vector<Rule>& rule_catalog();
/// Throws std::out_of_range for unknown names.
const Rule& find_rule(const std::string& name);

/// Random metavariable values: small formulas over `props`, constants from {1/4, 1/2, 1, 2}.
RuleInstance random_instance(std::mt19937_64& rng, const std::vector<std::string>& props, std::size_t max_size = 4);

}  // namespace mtlkit
