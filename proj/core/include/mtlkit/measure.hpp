#pragma once

#include <cstdint>

#include "mtlkit/fo.hpp"
#include "mtlkit/interval.hpp"
#include "mtlkit/mtl.hpp"

namespace mtlkit {

/// Future-reach and past-reach. Derived operators are measured through their
/// Until/Since definitions; K+ and K- through their bounded definitions
/// !(!phi U[(0,1)] true) and !(!phi S[(0,1)] true). Results are finite or +inf.
Bound future_reach(const Mtl& phi);
Bound past_reach(const Mtl& phi);

/// Modal depth counting only Until/Since (and derived F/G/P/H) with an unbounded constraint.
int unbounding_depth(const Mtl& phi);

/// Every constraining interval is bounded.
bool is_bounded(const Mtl& phi);

/// Number of unbounded Until (resp. Since) occurrences, derived operators included.
int unbounded_until_count(const Mtl& phi);
int unbounded_since_count(const Mtl& phi);

enum class SeparationMode {
  Strict,   // F[=N] phi needs pr(phi) < N-1, P[=N] phi needs fr(phi) < N-1
  Lenient,  // the same comparisons with <=
};

/// Boolean combination of F[=N] phi, P[=N] phi satisfying the reach condition, and bounded formulas.
bool is_syntactically_separated(const Mtl& phi, SeparationMode mode = SeparationMode::Lenient);

/// Literal membership in Bet(lo, hi): every quantifier has the exact shape
/// exists z ((lo <= z & z < hi) & chi) (or its dual forall z ((lo <= z & z < hi) -> chi)),
/// and every predicate atom is applied to a bound variable without offset.
bool in_bet(const Fo& phi, const Term& lo, const Term& hi);

/// Adds the relativization guard to every quantifier whose range is already
/// implied by the surrounding atoms and rebuilds it in the exact Bet shape.
Fo normalize_bet(const Fo& phi, const Term& lo, const Term& hi);

/// phi has at most the free variable x and is in Bet(x, x+1) after normalization.
bool is_unit(const Fo& phi);
/// phi has at most the free variable x and is in Bet(x-N, x+N) after normalization.
bool is_n_bounded(const Fo& phi, std::int64_t n);

}  // namespace mtlkit
