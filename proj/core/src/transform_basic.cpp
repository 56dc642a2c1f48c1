#include "mtlkit/transform.hpp"

#include <string>

namespace mtlkit {

BudgetExceeded::BudgetExceeded(std::string stage, std::size_t budget)
    : std::runtime_error("budget of " + std::to_string(budget) + " nodes exceeded in stage '" + stage + "'"),
      stage_(std::move(stage)),
      budget_(budget) {}

RequiresGpssNormalization::RequiresGpssNormalization(Fo offending)
    : std::runtime_error("unit formula is not a Boolean combination of decomposition formulas: " +
                         print_fo(offending)),
      offending_(std::move(offending)) {}

void Budget::check(std::size_t nodes) const {
  if (nodes + steps_ > limit_) throw BudgetExceeded(stage_, limit_);
}

void Budget::step() {
  ++steps_;
  check(0);
}

Mtl scale_mtl(const Mtl& phi, const Rational& r) {
  if (r.sign() <= 0) throw std::invalid_argument("scale factor must be positive");
  switch (phi.kind()) {
    case MtlKind::True:
    case MtlKind::Prop: return phi;
    case MtlKind::EvF: return mtl::ev_f(phi.offset() * r, scale_mtl(phi.arg(), r));
    case MtlKind::EvP: return mtl::ev_p(phi.offset() * r, scale_mtl(phi.arg(), r));
    case MtlKind::Until: return mtl::until(scale_mtl(phi.lhs(), r), scale_mtl(phi.rhs(), r), phi.interval().scaled(r));
    case MtlKind::Since: return mtl::since(scale_mtl(phi.lhs(), r), scale_mtl(phi.rhs(), r), phi.interval().scaled(r));
    case MtlKind::BoxF: return mtl::box_f(phi.interval().scaled(r), scale_mtl(phi.arg(), r));
    case MtlKind::BoxP: return mtl::box_p(phi.interval().scaled(r), scale_mtl(phi.arg(), r));
    case MtlKind::DiaF: return mtl::dia_f(phi.interval().scaled(r), scale_mtl(phi.arg(), r));
    case MtlKind::DiaP: return mtl::dia_p(phi.interval().scaled(r), scale_mtl(phi.arg(), r));
    default: {
      Mtl a = scale_mtl(phi.lhs(), r);
      Mtl b = phi.rhs().valid() ? scale_mtl(phi.rhs(), r) : Mtl{};
      return mtl::rebuild(phi, a, b);
    }
  }
}

namespace {

Term scale_term(const Term& t, const Rational& r) { return {t.var, t.offset * r}; }

}  // namespace

Fo scale_fo(const Fo& phi, const Rational& r) {
  if (r.sign() <= 0) throw std::invalid_argument("scale factor must be positive");
  switch (phi.kind()) {
    case FoKind::True: return phi;
    case FoKind::Pred: return fo::pred(phi.name(), scale_term(phi.t1(), r));
    case FoKind::Less: return fo::less(scale_term(phi.t1(), r), scale_term(phi.t2(), r));
    case FoKind::Eq: return fo::eq(scale_term(phi.t1(), r), scale_term(phi.t2(), r));
    case FoKind::Not: return fo::neg(scale_fo(phi.lhs(), r));
    case FoKind::And: return fo::conj(scale_fo(phi.lhs(), r), scale_fo(phi.rhs(), r));
    case FoKind::Or: return fo::disj(scale_fo(phi.lhs(), r), scale_fo(phi.rhs(), r));
    case FoKind::Implies: return fo::implies(scale_fo(phi.lhs(), r), scale_fo(phi.rhs(), r));
    case FoKind::Exists: return fo::exists(phi.name(), scale_fo(phi.body(), r));
    case FoKind::Forall: return fo::forall(phi.name(), scale_fo(phi.body(), r));
  }
  return phi;
}

namespace {

class ToFo {
 public:
  Fo at(const Mtl& f, const Term& s) {
    switch (f.kind()) {
      case MtlKind::True: return fo::tt();
      case MtlKind::Prop: return fo::pred(f.name(), s);
      case MtlKind::Not: return fo::neg(at(f.arg(), s));
      case MtlKind::And: return fo::conj(at(f.lhs(), s), at(f.rhs(), s));
      case MtlKind::Or: return fo::disj(at(f.lhs(), s), at(f.rhs(), s));
      case MtlKind::EvF: return at(f.arg(), s.plus(f.offset()));
      case MtlKind::EvP: return at(f.arg(), s.plus(-f.offset()));
      case MtlKind::Until: return binary(f, s, true);
      case MtlKind::Since: return binary(f, s, false);
      case MtlKind::DiaF: return at(mtl::until(mtl::tt(), f.arg(), f.interval()), s);
      case MtlKind::DiaP: return at(mtl::since(mtl::tt(), f.arg(), f.interval()), s);
      case MtlKind::BoxF: return fo::neg(at(mtl::until(mtl::tt(), mtl::neg(f.arg()), f.interval()), s));
      case MtlKind::BoxP: return fo::neg(at(mtl::since(mtl::tt(), mtl::neg(f.arg()), f.interval()), s));
      case MtlKind::Kplus: return fo::neg(at(mtl::until(mtl::neg(f.arg()), mtl::tt()), s));
      case MtlKind::Kminus: return fo::neg(at(mtl::since(mtl::neg(f.arg()), mtl::tt()), s));
    }
    return fo::tt();
  }

 private:
  std::string fresh() { return "t" + std::to_string(++counter_); }

  // t - s in I (future) or s - t in I (past).
  static Fo constraint(const Interval& iv, const Term& s, const Term& t, bool future) {
    std::vector<Fo> parts;
    if (iv.is_singleton()) {
      const Rational& q = iv.lo.value();
      return fo::eq(t, s.plus(future ? q : -q));
    }
    auto before = [&](const Term& a, const Term& b, bool closed) { return closed ? fo::leq(a, b) : fo::less(a, b); };
    const Rational lo = iv.lo.value();
    if (future) {
      parts.push_back(lo.is_zero() ? fo::less(s, t) : before(s.plus(lo), t, iv.lo_closed));
      if (iv.hi.is_finite()) parts.push_back(before(t, s.plus(iv.hi.value()), iv.hi_closed));
    } else {
      if (iv.hi.is_finite()) parts.push_back(before(s.plus(-iv.hi.value()), t, iv.hi_closed));
      parts.push_back(lo.is_zero() ? fo::less(t, s) : before(t, s.plus(-lo), iv.lo_closed));
    }
    return fo::conj_all(parts);
  }

  Fo binary(const Mtl& f, const Term& s, bool future) {
    Term t = fo::var(fresh());
    std::vector<Fo> body{constraint(f.interval(), s, t, future), at(f.rhs(), t)};
    if (f.lhs().kind() != MtlKind::True) {
      Term u = fo::var(fresh());
      Fo between = future ? fo::conj(fo::less(s, u), fo::less(u, t)) : fo::conj(fo::less(t, u), fo::less(u, s));
      body.push_back(fo::forall(u.var, fo::implies(between, at(f.lhs(), u))));
    }
    return fo::exists(t.var, fo::conj_all(body));
  }

  int counter_ = 0;
};

}  // namespace

Fo mtl_to_fo(const Mtl& phi) {
  ToFo t;
  return t.at(phi, fo::var("x"));
}

}  // namespace mtlkit
