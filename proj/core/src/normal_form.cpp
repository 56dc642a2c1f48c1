#include <stdexcept>

#include "transform_internal.hpp"

namespace mtlkit {

namespace detail {

using namespace mtl;

bool is_true(const Mtl& f) { return f.kind() == MtlKind::True; }
bool is_false(const Mtl& f) { return f.kind() == MtlKind::Not && is_true(f.arg()); }

Mtl sconj(const Mtl& a, const Mtl& b) {
  if (is_false(a) || is_false(b)) return ff();
  if (is_true(a)) return b;
  if (is_true(b) || a == b) return a;
  return conj(a, b);
}

Mtl sdisj(const Mtl& a, const Mtl& b) {
  if (is_true(a) || is_true(b)) return tt();
  if (is_false(a)) return b;
  if (is_false(b) || a == b) return a;
  return disj(a, b);
}

Mtl sneg(const Mtl& a) {
  if (a.kind() == MtlKind::Not) return a.arg();
  return neg(a);
}

Mtl sconj_all(const std::vector<Mtl>& xs) {
  Mtl out = tt();
  for (const auto& x : xs) out = sconj(out, x);
  return out;
}

Mtl sdisj_all(const std::vector<Mtl>& xs) {
  Mtl out = ff();
  for (const auto& x : xs) out = sdisj(out, x);
  return out;
}

void flatten(const Mtl& f, MtlKind k, std::vector<Mtl>& out) {
  if (f.kind() == k) {
    flatten(f.lhs(), k, out);
    flatten(f.rhs(), k, out);
  } else {
    out.push_back(f);
  }
}

bool is_future_op(MtlKind k) {
  return k == MtlKind::Until || k == MtlKind::BoxF || k == MtlKind::DiaF || k == MtlKind::EvF || k == MtlKind::Kplus;
}

bool is_past_op(MtlKind k) {
  return k == MtlKind::Since || k == MtlKind::BoxP || k == MtlKind::DiaP || k == MtlKind::EvP || k == MtlKind::Kminus;
}

namespace {
bool has_iv(MtlKind k) {
  return k == MtlKind::Until || k == MtlKind::Since || k == MtlKind::BoxF || k == MtlKind::BoxP ||
         k == MtlKind::DiaF || k == MtlKind::DiaP;
}
}  // namespace

bool is_unbounded_op(const Mtl& f) { return has_iv(f.kind()) && !f.interval().hi.is_finite(); }

bool is_bounded_op(const Mtl& f) {
  if (has_iv(f.kind())) return f.interval().hi.is_finite();
  return f.kind() == MtlKind::EvF || f.kind() == MtlKind::EvP || f.kind() == MtlKind::Kplus ||
         f.kind() == MtlKind::Kminus;
}

// F[=q] (future) or P[=q] pushed down to the propositions of a normal-form formula.
Mtl shift(const Rational& q, bool future, const Mtl& f) {
  if (q.is_zero()) return f;
  const Rational d = future ? q : -q;  // displacement
  switch (f.kind()) {
    case MtlKind::True: return f;
    case MtlKind::Prop: return future ? ev_f(q, f) : ev_p(q, f);
    case MtlKind::EvF:
    case MtlKind::EvP: {
      Rational total = d + (f.kind() == MtlKind::EvF ? f.offset() : -f.offset());
      if (total.is_zero()) return f.arg();
      return total.sign() > 0 ? ev_f(total, f.arg()) : ev_p(-total, f.arg());
    }
    case MtlKind::Not: return neg(shift(q, future, f.arg()));
    case MtlKind::And: return conj(shift(q, future, f.lhs()), shift(q, future, f.rhs()));
    case MtlKind::Or: return disj(shift(q, future, f.lhs()), shift(q, future, f.rhs()));
    case MtlKind::Until:
    case MtlKind::Since: return rebuild(f, shift(q, future, f.lhs()), shift(q, future, f.rhs()));
    case MtlKind::BoxF:
    case MtlKind::BoxP: return rebuild(f, shift(q, future, f.arg()));
    default: throw std::logic_error("shift: operand not in normal form: " + print_mtl(f));
  }
}

Mtl mk_binary(bool future, const Mtl& a, const Mtl& b, const Interval& i) {
  // The invariant is required on a non-empty open interval.
  if (is_false(b) || is_false(a)) return ff();
  if (is_true(a) && is_true(b)) return tt();
  if (b.kind() == MtlKind::Or) return sdisj(mk_binary(future, a, b.lhs(), i), mk_binary(future, a, b.rhs(), i));
  if (a.kind() == MtlKind::And) return sconj(mk_binary(future, a.lhs(), b, i), mk_binary(future, a.rhs(), b, i));
  const Rational lo = i.lo.value();
  if (i.is_singleton()) return sconj(mk_box(future, below(lo), a), shift(lo, future, b));
  if (lo.sign() > 0) {
    Mtl rest = tt();
    Interval tail = i.hi.is_finite() ? Interval::make(Rational(0), false, i.hi.value() - lo, i.hi_closed)
                                     : Interval::positive();
    rest = sconj(a, mk_binary(future, a, b, tail));
    if (i.lo_closed) rest = sdisj(b, rest);
    return sconj(mk_box(future, below(lo), a), shift(lo, future, rest));
  }
  return future ? until(a, b, i) : since(a, b, i);
}

Mtl mk_until(const Mtl& a, const Mtl& b, const Interval& i) { return mk_binary(true, a, b, i); }
Mtl mk_since(const Mtl& a, const Mtl& b, const Interval& i) { return mk_binary(false, a, b, i); }

Mtl mk_box(bool future, const Interval& i, const Mtl& a) {
  if (is_true(a)) return tt();
  if (is_false(a) && !i.is_singleton()) return ff();
  const Rational lo = i.lo.value();
  if (i.is_singleton()) return shift(lo, future, a);
  if (lo.sign() > 0) {
    Interval tail = i.hi.is_finite() ? Interval::make(Rational(0), false, i.hi.value() - lo, i.hi_closed)
                                     : Interval::positive();
    Mtl rest = mk_box(future, tail, a);
    if (i.lo_closed) rest = sconj(a, rest);
    return shift(lo, future, rest);
  }
  return future ? box_f(i, a) : box_p(i, a);
}

namespace {

// K+(a) (future) or K-(a) of a normal-form formula, as a normal-form formula.
// Limits are pushed through unbounded operators so that they end up on bounded subformulas.
Mtl limit_nf(bool future, const Mtl& a) {
  auto generic = [&](const Mtl& x) { return negate_nf(mk_binary(future, negate_nf(x), tt(), below(Rational(1)))); };
  switch (a.kind()) {
    case MtlKind::True: return a;
    case MtlKind::Not: return negate_nf(limit_nf(future, a.arg()));
    case MtlKind::And: return sconj(limit_nf(future, a.lhs()), limit_nf(future, a.rhs()));
    case MtlKind::Or: return sdisj(limit_nf(future, a.lhs()), limit_nf(future, a.rhs()));
    case MtlKind::Until:
    case MtlKind::Since:
    case MtlKind::BoxF:
    case MtlKind::BoxP: {
      if (a.interval().hi.is_finite()) return generic(a);
      bool same_side = is_future_op(a.kind()) == future;
      bool binary = a.kind() == MtlKind::Until || a.kind() == MtlKind::Since;
      if (same_side) return binary ? sconj(limit_nf(future, a.lhs()), a) : a;
      if (!binary) return sconj_all({a, a.arg(), limit_nf(future, a.arg())});
      return sconj(limit_nf(future, a.lhs()),
                   sdisj_all({limit_nf(future, a.rhs()), a.rhs(), sconj(a, a.lhs())}));
    }
    default: return generic(a);
  }
}

}  // namespace

Mtl negate_nf(const Mtl& f) {
  switch (f.kind()) {
    case MtlKind::True: return ff();
    case MtlKind::Not: return f.arg();
    case MtlKind::And: return sdisj(negate_nf(f.lhs()), negate_nf(f.rhs()));
    case MtlKind::Or: return sconj(negate_nf(f.lhs()), negate_nf(f.rhs()));
    case MtlKind::Until:
    case MtlKind::Since: {
      if (f.interval().hi.is_finite()) return neg(f);
      const bool future = f.kind() == MtlKind::Until;
      Mtl na = negate_nf(f.lhs()), nb = negate_nf(f.rhs());
      Mtl k = limit_nf(future, na);
      return sdisj_all({mk_box(future, Interval::positive(), nb), k,
                        mk_binary(future, nb, sconj(nb, sdisj(na, k)), Interval::positive())});
    }
    case MtlKind::BoxF:
    case MtlKind::BoxP: {
      if (f.interval().hi.is_finite()) return neg(f);
      return mk_binary(f.kind() == MtlKind::BoxF, tt(), negate_nf(f.arg()), Interval::positive());
    }
    default: return neg(f);
  }
}

}  // namespace detail

using namespace detail;

Mtl to_normal_form(const Mtl& f) {
  using namespace mtl;
  switch (f.kind()) {
    case MtlKind::True:
    case MtlKind::Prop: return f;
    case MtlKind::Not: return negate_nf(to_normal_form(f.arg()));
    case MtlKind::And: return sconj(to_normal_form(f.lhs()), to_normal_form(f.rhs()));
    case MtlKind::Or: return sdisj(to_normal_form(f.lhs()), to_normal_form(f.rhs()));
    case MtlKind::EvF: return shift(f.offset(), true, to_normal_form(f.arg()));
    case MtlKind::EvP: return shift(f.offset(), false, to_normal_form(f.arg()));
    case MtlKind::Until: return mk_until(to_normal_form(f.lhs()), to_normal_form(f.rhs()), f.interval());
    case MtlKind::Since: return mk_since(to_normal_form(f.lhs()), to_normal_form(f.rhs()), f.interval());
    case MtlKind::DiaF: return mk_until(tt(), to_normal_form(f.arg()), f.interval());
    case MtlKind::DiaP: return mk_since(tt(), to_normal_form(f.arg()), f.interval());
    case MtlKind::BoxF: return mk_box(true, f.interval(), to_normal_form(f.arg()));
    case MtlKind::BoxP: return mk_box(false, f.interval(), to_normal_form(f.arg()));
    case MtlKind::Kplus: return limit_nf(true, to_normal_form(f.arg()));
    case MtlKind::Kminus: return limit_nf(false, to_normal_form(f.arg()));
  }
  throw std::logic_error("unreachable");
}

namespace {

bool nf_interval(const Interval& i) { return i.lo == Bound(Rational(0)) && !i.lo_closed; }

bool negatable(const Mtl& f) {
  switch (f.kind()) {
    case MtlKind::True:
    case MtlKind::Prop:
    case MtlKind::EvF:
    case MtlKind::EvP: return true;
    case MtlKind::Until:
    case MtlKind::Since:
    case MtlKind::BoxF:
    case MtlKind::BoxP: return f.interval().hi.is_finite();
    default: return false;
  }
}

}  // namespace

bool is_normal_form(const Mtl& f) {
  switch (f.kind()) {
    case MtlKind::True:
    case MtlKind::Prop: return true;
    case MtlKind::Not: return negatable(f.arg()) && is_normal_form(f.arg());
    case MtlKind::And:
    case MtlKind::Or: return is_normal_form(f.lhs()) && is_normal_form(f.rhs());
    case MtlKind::EvF:
    case MtlKind::EvP: return f.offset().sign() > 0 && f.arg().kind() == MtlKind::Prop;
    case MtlKind::Until:
    case MtlKind::Since:
      return nf_interval(f.interval()) && f.lhs().kind() != MtlKind::And && f.rhs().kind() != MtlKind::Or &&
             is_normal_form(f.lhs()) && is_normal_form(f.rhs());
    case MtlKind::BoxF:
    case MtlKind::BoxP: return nf_interval(f.interval()) && is_normal_form(f.arg());
    default: return false;
  }
}

}  // namespace mtlkit
