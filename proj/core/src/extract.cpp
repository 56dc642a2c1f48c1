
#include "mtlkit/rules.hpp"
#include "transform_internal.hpp"

namespace mtlkit {

namespace {

using namespace detail;

bool is_scope_op(const Mtl& f) {
  switch (f.kind()) {
    case MtlKind::Until:
    case MtlKind::Since:
    case MtlKind::BoxF:
    case MtlKind::BoxP:
    case MtlKind::DiaF:
    case MtlKind::DiaP:
    case MtlKind::EvF:
    case MtlKind::EvP:
    case MtlKind::Kplus:
    case MtlKind::Kminus: return is_bounded_op(f);
    default: return false;
  }
}

// An unbounded operator reachable from f through Boolean connectives only.
bool unbounded_at_top(const Mtl& f) {
  switch (f.kind()) {
    case MtlKind::Not: return unbounded_at_top(f.arg());
    case MtlKind::And:
    case MtlKind::Or: return unbounded_at_top(f.lhs()) || unbounded_at_top(f.rhs());
    default: return is_unbounded_op(f);
  }
}

bool is_direct_redex(const Mtl& f) {
  if (!is_scope_op(f)) return false;
  if (f.kind() == MtlKind::Until || f.kind() == MtlKind::Since)
    return unbounded_at_top(f.lhs()) || unbounded_at_top(f.rhs());
  return unbounded_at_top(f.arg());
}

// Innermost redex: no redex strictly inside it.
bool find_redex(const Mtl& f, Mtl& found) {
  if (f.lhs().valid() && find_redex(f.lhs(), found)) return true;
  if (f.rhs().valid() && find_redex(f.rhs(), found)) return true;
  if (!is_direct_redex(f)) return false;
  found = f;
  return true;
}

Mtl replace(const Mtl& f, const Mtl& target, const Mtl& by) {
  if (f.size() < target.size()) return f;
  if (f == target) return by;
  if (!f.lhs().valid()) return f;
  Mtl a = replace(f.lhs(), target, by);
  Mtl b = f.rhs().valid() ? replace(f.rhs(), target, by) : Mtl{};
  if (a.id() == f.lhs().id() && (!b.valid() || b.id() == f.rhs().id())) return f;
  return mtl::rebuild(f, a, b);
}

Mtl apply(const std::string& name, const RuleInstance& x) { return find_rule(name).rhs(x); }

// theta U_(0,q) (L & chi) with L unbounded.
Mtl rewrite_target(const Mtl& theta, const Mtl& lit, const Mtl& chi, const Rational& q) {
  RuleInstance x;
  x.theta = theta;
  x.chi = chi;
  x.q = q;
  switch (lit.kind()) {
    case MtlKind::Until: x.phi = lit.lhs(); x.psi = lit.rhs(); return apply("extract.i", x);
    case MtlKind::BoxF: x.phi = lit.arg(); return apply("extract.ii", x);
    case MtlKind::Since: x.phi = lit.lhs(); x.psi = lit.rhs(); return apply("extract.iii", x);
    case MtlKind::BoxP: x.phi = lit.arg(); return apply("extract.iv", x);
    default: throw std::logic_error("extract: unexpected literal " + print_mtl(lit));
  }
}

// (L | chi) U_(0,q) theta with L unbounded.
Mtl rewrite_invariant(const Mtl& lit, const Mtl& chi, const Mtl& theta, const Rational& q) {
  RuleInstance x;
  x.theta = theta;
  x.chi = chi;
  x.q = q;
  switch (lit.kind()) {
    case MtlKind::Until: x.phi = lit.lhs(); x.psi = lit.rhs(); return apply("extract.v.complete", x);
    case MtlKind::BoxF: x.phi = lit.arg(); return apply("extract.vi.complete", x);
    case MtlKind::Since: x.phi = lit.lhs(); x.psi = lit.rhs(); return apply("extract.vii", x);
    case MtlKind::BoxP: x.phi = lit.arg(); return apply("extract.viii", x);
    default: throw std::logic_error("extract: unexpected literal " + print_mtl(lit));
  }
}

// First unbounded operator at the Boolean top of f (it occurs positively in normal form).
Mtl unbounded_literal(const Mtl& f) {
  if (f.kind() == MtlKind::And || f.kind() == MtlKind::Or) {
    Mtl l = unbounded_literal(f.lhs());
    return l.valid() ? l : unbounded_literal(f.rhs());
  }
  return is_unbounded_op(f) ? f : Mtl{};
}

Mtl assign(const Mtl& f, const Mtl& lit, bool value) {
  if (f == lit) return value ? mtl::tt() : mtl::ff();
  if (f.kind() == MtlKind::And) return sconj(assign(f.lhs(), lit, value), assign(f.rhs(), lit, value));
  if (f.kind() == MtlKind::Or) return sdisj(assign(f.lhs(), lit, value), assign(f.rhs(), lit, value));
  return f;
}

// One step on a future redex (past redexes are handled through the mirror image).
// Arguments are split on one unbounded literal L at a time; by monotonicity
// T = (L & T[L:=1]) | T[L:=0] and T = (L | T[L:=0]) & T[L:=1].
Mtl rewrite_future(const Mtl& f) {
  using namespace mtl;
  const Rational q = f.interval().hi.value();
  if (f.kind() == MtlKind::BoxF) {
    RuleInstance x;
    x.phi = f.arg();
    x.q = q;
    if (f.interval().hi_closed) return apply("extract.closed-box", x);
    return neg(until(tt(), neg(f.arg()), below(q)));
  }
  const Mtl& theta = f.lhs();
  const Mtl& target = f.rhs();
  if (f.interval().hi_closed) {
    RuleInstance x;
    x.theta = theta;
    x.chi = target;
    x.q = q;
    return apply("extract.closed-bound", x);
  }
  if (Mtl lit = unbounded_literal(target); lit.valid())
    return sdisj(rewrite_target(theta, lit, assign(target, lit, true), q),
                 until(theta, assign(target, lit, false), below(q)));
  Mtl lit = unbounded_literal(theta);
  return sconj(rewrite_invariant(lit, assign(theta, lit, false), target, q),
               until(assign(theta, lit, true), target, below(q)));
}

Mtl rewrite_redex(const Mtl& f) {
  if (is_future_op(f.kind())) return rewrite_future(f);
  return mirror(rewrite_future(mirror(f)));
}

bool unbounded_below(const Mtl& f, bool in_scope) {
  if (in_scope && is_unbounded_op(f)) return true;
  bool scope = in_scope || is_scope_op(f);
  if (f.lhs().valid() && unbounded_below(f.lhs(), scope)) return true;
  return f.rhs().valid() && unbounded_below(f.rhs(), scope);
}

}  // namespace

bool has_unbounded_under_bounded(const Mtl& phi) { return unbounded_below(phi, false); }

Mtl extract_unbounded(const Mtl& phi, std::size_t limit) {
  Budget budget("extract_unbounded", limit);
  Mtl f = to_normal_form(phi);
  for (;;) {
    budget.check(f.size());
    Mtl redex;
    if (!find_redex(f, redex)) return f;
    budget.step();
    f = to_normal_form(replace(f, redex, rewrite_redex(redex)));
  }
}

}  // namespace mtlkit
