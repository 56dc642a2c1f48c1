#include "transform_internal.hpp"

namespace mtlkit {

namespace {

using namespace detail;

using Kind = SeparatedForm::Kind;

SeparatedForm leaf(Kind k, Rational n, Mtl body) {
  SeparatedForm s;
  s.kind = k;
  s.n = std::move(n);
  s.body = std::move(body);
  return s;
}

SeparatedForm node(Kind k, std::vector<SeparatedForm> children) {
  SeparatedForm s;
  s.kind = k;
  s.children = std::move(children);
  return s;
}

SeparatedForm mirror_form(const SeparatedForm& s) {
  switch (s.kind) {
    case Kind::Bounded: return leaf(Kind::Bounded, s.n, mirror(s.body));
    case Kind::DistantFuture: return leaf(Kind::DistantPast, s.n, mirror(s.body));
    case Kind::DistantPast: return leaf(Kind::DistantFuture, s.n, mirror(s.body));
    default: break;
  }
  std::vector<SeparatedForm> cs;
  for (const auto& c : s.children) cs.push_back(mirror_form(c));
  return node(s.kind, std::move(cs));
}

bool is_positive_unit(const Mtl& f) {
  return is_unbounded_op(f) && f.interval() == Interval::positive() &&
         (f.kind() == MtlKind::Until || f.kind() == MtlKind::BoxF || f.kind() == MtlKind::DiaF);
}

// Smallest natural strictly above pr(f) + 1, plus the margin.
Rational horizon(const Mtl& f, const Rational& margin) {
  Bound pr = past_reach(f);
  if (pr.is_pos_inf()) throw std::logic_error("complete_separation: unbounded past in " + print_mtl(f));
  Rational p = pr.is_finite() && pr.value().sign() > 0 ? pr.value() : Rational(0);
  return p.floor() + Rational(2) + margin;
}

class Completer {
 public:
  Completer(std::size_t limit, Rational margin) : budget_("complete_separation", limit), margin_(std::move(margin)) {}

  SeparatedForm top(const Mtl& f) {
    switch (f.kind()) {
      case MtlKind::Not: return node(Kind::Not, {top(f.arg())});
      case MtlKind::And: return node(Kind::And, {top(f.lhs()), top(f.rhs())});
      case MtlKind::Or: return node(Kind::Or, {top(f.lhs()), top(f.rhs())});
      default: break;
    }
    if (is_bounded(f)) return leaf(Kind::Bounded, Rational(0), f);
    if (unbounded_since_count(f) == 0) return future(f);
    if (unbounded_until_count(f) == 0) return mirror_form(future(mirror(f)));
    throw TransformError("complete_separation: mixed component " + print_mtl(f));
  }

 private:
  // f has no unbounded Since.
  SeparatedForm future(const Mtl& f) {
    if (is_bounded(f)) return leaf(Kind::Bounded, Rational(0), f);
    if (is_positive_unit(f)) return unit(f);
    Mtl e;
    try {
      e = extract_unbounded(f, budget_.limit());
    } catch (const BudgetExceeded&) {
      throw BudgetExceeded(budget_.stage(), budget_.limit());
    }
    return spread(e);
  }

  SeparatedForm spread(const Mtl& e) {
    switch (e.kind()) {
      case MtlKind::Not: return node(Kind::Not, {spread(e.arg())});
      case MtlKind::And: return node(Kind::And, {spread(e.lhs()), spread(e.rhs())});
      case MtlKind::Or: return node(Kind::Or, {spread(e.lhs()), spread(e.rhs())});
      default: break;
    }
    if (is_bounded(e)) return leaf(Kind::Bounded, Rational(0), e);
    if (is_positive_unit(e)) return unit(e);
    throw std::logic_error("complete_separation: unexpected component " + print_mtl(e));
  }

  // a U b = a U_(0,N) b | (G_(0,N) a & F[=N](b | (a & a U b)));  G a = G_(0,N) a & F[=N](a & G a)
  SeparatedForm unit(const Mtl& f) {
    using namespace mtl;
    budget_.step();
    const Rational n = horizon(f, margin_);
    SeparatedForm out;
    if (f.kind() == MtlKind::BoxF) {
      const Mtl& a = f.arg();
      out = node(Kind::And, {future(box_f(below(n), a)), leaf(Kind::DistantFuture, n, conj(a, f))});
    } else {
      Mtl a = f.kind() == MtlKind::DiaF ? tt() : f.lhs();
      const Mtl& b = f.kind() == MtlKind::DiaF ? f.arg() : f.rhs();
      Mtl tail = disj(b, is_true(a) ? f : conj(a, f));
      SeparatedForm far = leaf(Kind::DistantFuture, n, tail);
      if (!is_true(a)) far = node(Kind::And, {future(box_f(below(n), a)), std::move(far)});
      out = node(Kind::Or, {future(until(a, b, below(n))), std::move(far)});
    }
    budget_.check(out.flatten().size());
    return out;
  }

  Budget budget_;
  Rational margin_;
};

}  // namespace

Mtl SeparatedForm::flatten() const {
  switch (kind) {
    case Kind::Bounded: return body;
    case Kind::DistantFuture: return mtl::ev_f(n, body);
    case Kind::DistantPast: return mtl::ev_p(n, body);
    case Kind::Not: return sneg(children.at(0).flatten());
    case Kind::And: {
      Mtl out = mtl::tt();
      for (const auto& c : children) out = sconj(out, c.flatten());
      return out;
    }
    case Kind::Or: {
      Mtl out = mtl::ff();
      for (const auto& c : children) out = sdisj(out, c.flatten());
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

std::size_t SeparatedForm::leaf_count() const {
  if (children.empty()) return 1;
  std::size_t n = 0;
  for (const auto& c : children) n += c.leaf_count();
  return n;
}

SeparatedForm complete_separation(const Mtl& phi, std::size_t budget) {
  if (!is_skeleton_separated(phi)) throw TransformError("complete_separation: input is not skeleton-separated");
  return Completer(budget, Rational(0)).top(phi);
}

namespace detail {

SeparatedForm separate_with_margin(const Mtl& phi, std::size_t budget, const Rational& margin,
                                   std::vector<StageTrace>* trace) {
  auto record = [&](const char* stage, const Mtl& f) {
    if (trace) trace->push_back({stage, f});
  };
  Mtl nf = to_normal_form(phi);
  record("to_normal_form", nf);
  Mtl ex = extract_unbounded(nf, budget);
  record("extract_unbounded", ex);
  Mtl sk = separate_ltl_skeleton(ex, budget);
  record("separate_ltl_skeleton", sk);
  if (!is_skeleton_separated(sk)) throw TransformError("complete_separation: input is not skeleton-separated");
  SeparatedForm out = Completer(budget, margin).top(sk);
  record("complete_separation", out.flatten());
  return out;
}

}  // namespace detail

SeparatedForm separate(const Mtl& phi, std::size_t budget, std::vector<StageTrace>* trace) {
  return separate_with_margin(phi, budget, Rational(0), trace);
}

}  // namespace mtlkit
