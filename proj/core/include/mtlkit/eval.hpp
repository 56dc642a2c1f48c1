#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>

#include "mtlkit/fo.hpp"
#include "mtlkit/interval.hpp"
#include "mtlkit/mtl.hpp"
#include "mtlkit/signal.hpp"

namespace mtlkit {

/// Evaluation failure: unknown proposition, unbound variable, wrong arity.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact truth region {r : f, r |= phi}, computed structurally by interval algebra.
SatSet mtl_satset(const Signal& f, const Mtl& phi);

/// Direct point evaluation. Quantified clauses are decided by enumerating the
/// critical points of the operands (a syntactic superset of their breakpoints,
/// shifted by the constraint endpoints) and the midpoints between them. This is
/// a separate code path from mtl_satset and never consults satisfaction sets.
bool mtl_holds(const Signal& f, const Rational& r, const Mtl& phi);

/// Point evaluator reused across many points of the same (signal, formula).
class PointEvaluator {
 public:
  PointEvaluator(const Signal& f, Mtl phi);
  ~PointEvaluator();
  PointEvaluator(const PointEvaluator&) = delete;
  PointEvaluator& operator=(const PointEvaluator&) = delete;
  bool holds(const Rational& r);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

using Env = std::map<std::string, Rational>;

/// First-order truth over the reals. A quantifier ranges over a finite set of
/// candidate points: breakpoints of f and the values of the outer variables,
/// shifted by the offset sums along chains of atoms linking the bound variable
/// to them (at most one link per quantifier in scope), together with the
/// midpoints between consecutive candidates and one point beyond each extreme.
/// Guard atoms comparing the bound variable with outer terms clip the range.
bool fo_eval(const Signal& f, const Fo& phi, const Env& env);

/// Exact truth region of the single free variable of phi.
SatSet fo_truth_set(const Signal& f, const Fo& phi);

/// Same as fo_truth_set with `extra_depth` additional links per chain
/// (a denser grid, used to cross-check the default).
SatSet fo_truth_set(const Signal& f, const Fo& phi, int extra_depth);

}  // namespace mtlkit
