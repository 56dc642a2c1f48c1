#pragma once

#include <vector>

#include "mtlkit/measure.hpp"
#include "mtlkit/transform.hpp"

namespace mtlkit::detail {

bool is_true(const Mtl& f);
bool is_false(const Mtl& f);

// Constant-folding constructors.
Mtl sconj(const Mtl& a, const Mtl& b);
Mtl sdisj(const Mtl& a, const Mtl& b);
Mtl sneg(const Mtl& a);
Mtl sconj_all(const std::vector<Mtl>& xs);
Mtl sdisj_all(const std::vector<Mtl>& xs);

void flatten(const Mtl& f, MtlKind k, std::vector<Mtl>& out);

bool is_future_op(MtlKind k);
bool is_past_op(MtlKind k);
/// Until/Since/Box/Diamond with an infinite upper bound.
bool is_unbounded_op(const Mtl& f);
bool is_bounded_op(const Mtl& f);

// Normal-form builders; operands must already be in normal form.
Mtl shift(const Rational& q, bool future, const Mtl& f);
Mtl mk_until(const Mtl& a, const Mtl& b, const Interval& i);
Mtl mk_since(const Mtl& a, const Mtl& b, const Interval& i);
Mtl mk_binary(bool future, const Mtl& a, const Mtl& b, const Interval& i);
Mtl mk_box(bool future, const Interval& i, const Mtl& a);
Mtl negate_nf(const Mtl& f);

/// Disjunctive / conjunctive normal form over the non-Boolean subformulas
/// (negations of non-Boolean subformulas count as literals).
std::vector<std::vector<Mtl>> dnf(const Mtl& f, const Budget& budget);
std::vector<std::vector<Mtl>> cnf(const Mtl& f, const Budget& budget);

/// Mirror image: U <-> S, G <-> H, F <-> P, K+ <-> K-.
Mtl mirror(const Mtl& f);

/// separate with every horizon N raised by `margin`.
SeparatedForm separate_with_margin(const Mtl& phi, std::size_t budget, const Rational& margin,
                                   std::vector<StageTrace>* trace = nullptr);

}  // namespace mtlkit::detail
