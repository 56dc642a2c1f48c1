#include "mtlkit/mtl.hpp"

#include <stdexcept>

namespace mtlkit {

ParseError::ParseError(const std::string& msg, int line, int column, std::vector<std::string> expected)
    : std::runtime_error(msg + " at " + std::to_string(line) + ":" + std::to_string(column)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

std::size_t interval_hash(const Interval& i) {
  std::size_t h = static_cast<std::size_t>(i.lo.kind()) * 31 + static_cast<std::size_t>(i.hi.kind());
  if (i.lo.is_finite()) h = mix(h, i.lo.value().hash());
  if (i.hi.is_finite()) h = mix(h, i.hi.value().hash());
  return mix(h, (i.lo_closed ? 2u : 0u) | (i.hi_closed ? 1u : 0u));
}

bool has_interval(MtlKind k) {
  switch (k) {
    case MtlKind::Until:
    case MtlKind::Since:
    case MtlKind::BoxF:
    case MtlKind::BoxP:
    case MtlKind::DiaF:
    case MtlKind::DiaP: return true;
    default: return false;
  }
}

const Interval& require_constraint(const Interval& i) {
  if (!i.is_operator_constraint())
    throw std::invalid_argument("operator interval " + i.str() + " must be a subset of (0,inf)");
  return i;
}

}  // namespace

Mtl Mtl::make(Node&& n) {
  std::size_t h = static_cast<std::size_t>(n.kind) + 1;
  n.size = 1;
  if (n.kind == MtlKind::Prop) h = mix(h, std::hash<std::string>{}(n.name));
  if (n.kind == MtlKind::EvF || n.kind == MtlKind::EvP) h = mix(h, n.offset.hash());
  if (has_interval(n.kind)) h = mix(h, interval_hash(n.iv));
  if (n.a.valid()) {
    h = mix(h, n.a.hash());
    n.size += n.a.size();
  }
  if (n.b.valid()) {
    h = mix(h, n.b.hash());
    n.size += n.b.size();
  }
  n.hash = h;
  return Mtl(std::make_shared<const Node>(std::move(n)));
}

MtlKind Mtl::kind() const { return node_->kind; }
const std::string& Mtl::name() const { return node_->name; }
const Rational& Mtl::offset() const { return node_->offset; }
const Interval& Mtl::interval() const { return node_->iv; }
const Mtl& Mtl::lhs() const { return node_->a; }
const Mtl& Mtl::rhs() const { return node_->b; }
std::size_t Mtl::hash() const { return node_->hash; }
std::size_t Mtl::size() const { return node_->size; }

bool Mtl::is_unary_temporal() const {
  switch (kind()) {
    case MtlKind::EvF:
    case MtlKind::EvP:
    case MtlKind::BoxF:
    case MtlKind::BoxP:
    case MtlKind::DiaF:
    case MtlKind::DiaP:
    case MtlKind::Kplus:
    case MtlKind::Kminus: return true;
    default: return false;
  }
}

bool Mtl::is_binary() const {
  switch (kind()) {
    case MtlKind::And:
    case MtlKind::Or:
    case MtlKind::Until:
    case MtlKind::Since: return true;
    default: return false;
  }
}

bool Mtl::is_temporal() const {
  return is_unary_temporal() || kind() == MtlKind::Until || kind() == MtlKind::Since;
}

bool operator==(const Mtl& a, const Mtl& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.size != y.size || x.kind != y.kind) return false;
  if (x.kind == MtlKind::Prop && x.name != y.name) return false;
  if ((x.kind == MtlKind::EvF || x.kind == MtlKind::EvP) && x.offset != y.offset) return false;
  if (has_interval(x.kind) && !(x.iv == y.iv)) return false;
  return x.a == y.a && x.b == y.b;
}

namespace mtl {

namespace {
Mtl node(MtlKind k, Mtl a = {}, Mtl b = {}) {
  Mtl::Node n{k, {}, {}, Interval::positive(), std::move(a), std::move(b)};
  return Mtl::make(std::move(n));
}
Mtl inode(MtlKind k, const Interval& i, Mtl a, Mtl b = {}) {
  Mtl::Node n{k, {}, {}, require_constraint(i), std::move(a), std::move(b)};
  return Mtl::make(std::move(n));
}
Mtl qnode(MtlKind k, Rational q, Mtl a) {
  if (q.sign() < 0) throw std::invalid_argument("punctual offset must be non-negative");
  Mtl::Node n{k, {}, std::move(q), Interval::positive(), std::move(a), {}};
  return Mtl::make(std::move(n));
}
}  // namespace

Mtl tt() {
  static const Mtl t = node(MtlKind::True);
  return t;
}
Mtl ff() { return neg(tt()); }
Mtl prop(std::string name) {
  Mtl::Node n{MtlKind::Prop, std::move(name), {}, Interval::positive(), {}, {}};
  return Mtl::make(std::move(n));
}
Mtl neg(Mtl a) { return node(MtlKind::Not, std::move(a)); }
Mtl conj(Mtl a, Mtl b) { return node(MtlKind::And, std::move(a), std::move(b)); }
Mtl disj(Mtl a, Mtl b) { return node(MtlKind::Or, std::move(a), std::move(b)); }
Mtl implies(Mtl a, Mtl b) { return disj(neg(std::move(a)), std::move(b)); }
Mtl iff(Mtl a, Mtl b) { return disj(conj(a, b), conj(neg(a), neg(b))); }
Mtl until(Mtl lhs, Mtl rhs, Interval i) { return inode(MtlKind::Until, i, std::move(lhs), std::move(rhs)); }
Mtl since(Mtl lhs, Mtl rhs, Interval i) { return inode(MtlKind::Since, i, std::move(lhs), std::move(rhs)); }
Mtl ev_f(Rational q, Mtl a) { return qnode(MtlKind::EvF, std::move(q), std::move(a)); }
Mtl ev_p(Rational q, Mtl a) { return qnode(MtlKind::EvP, std::move(q), std::move(a)); }
Mtl box_f(Interval i, Mtl a) { return inode(MtlKind::BoxF, i, std::move(a)); }
Mtl box_p(Interval i, Mtl a) { return inode(MtlKind::BoxP, i, std::move(a)); }
Mtl dia_f(Interval i, Mtl a) { return inode(MtlKind::DiaF, i, std::move(a)); }
Mtl dia_p(Interval i, Mtl a) { return inode(MtlKind::DiaP, i, std::move(a)); }
Mtl box_f(Mtl a) { return box_f(Interval::positive(), std::move(a)); }
Mtl box_p(Mtl a) { return box_p(Interval::positive(), std::move(a)); }
Mtl dia_f(Mtl a) { return dia_f(Interval::positive(), std::move(a)); }
Mtl dia_p(Mtl a) { return dia_p(Interval::positive(), std::move(a)); }
Mtl kplus(Mtl a) { return node(MtlKind::Kplus, std::move(a)); }
Mtl kminus(Mtl a) { return node(MtlKind::Kminus, std::move(a)); }

Mtl conj_all(const std::vector<Mtl>& xs) {
  if (xs.empty()) return tt();
  Mtl acc = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) acc = conj(acc, xs[i]);
  return acc;
}

Mtl disj_all(const std::vector<Mtl>& xs) {
  if (xs.empty()) return ff();
  Mtl acc = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) acc = disj(acc, xs[i]);
  return acc;
}

Mtl rebuild(const Mtl& shape, Mtl a, Mtl b) {
  switch (shape.kind()) {
    case MtlKind::True:
    case MtlKind::Prop: return shape;
    case MtlKind::Not: return neg(std::move(a));
    case MtlKind::And: return conj(std::move(a), std::move(b));
    case MtlKind::Or: return disj(std::move(a), std::move(b));
    case MtlKind::Until: return until(std::move(a), std::move(b), shape.interval());
    case MtlKind::Since: return since(std::move(a), std::move(b), shape.interval());
    case MtlKind::EvF: return ev_f(shape.offset(), std::move(a));
    case MtlKind::EvP: return ev_p(shape.offset(), std::move(a));
    case MtlKind::BoxF: return box_f(shape.interval(), std::move(a));
    case MtlKind::BoxP: return box_p(shape.interval(), std::move(a));
    case MtlKind::DiaF: return dia_f(shape.interval(), std::move(a));
    case MtlKind::DiaP: return dia_p(shape.interval(), std::move(a));
    case MtlKind::Kplus: return kplus(std::move(a));
    case MtlKind::Kminus: return kminus(std::move(a));
  }
  throw std::logic_error("unreachable");
}

Interval below(const Rational& q) { return Interval::make(Rational(0), false, q, false); }
Interval below_eq(const Rational& q) { return Interval::make(Rational(0), false, q, true); }

}  // namespace mtl

Mtl desugar(const Mtl& f) {
  using namespace mtl;
  switch (f.kind()) {
    case MtlKind::True:
    case MtlKind::Prop: return f;
    case MtlKind::Not: return neg(desugar(f.arg()));
    case MtlKind::And: return conj(desugar(f.lhs()), desugar(f.rhs()));
    case MtlKind::Or: return disj(desugar(f.lhs()), desugar(f.rhs()));
    case MtlKind::Until: return until(desugar(f.lhs()), desugar(f.rhs()), f.interval());
    case MtlKind::Since: return since(desugar(f.lhs()), desugar(f.rhs()), f.interval());
    case MtlKind::EvF:
      if (f.offset().is_zero()) return desugar(f.arg());
      return until(tt(), desugar(f.arg()), Interval::point(f.offset()));
    case MtlKind::EvP:
      if (f.offset().is_zero()) return desugar(f.arg());
      return since(tt(), desugar(f.arg()), Interval::point(f.offset()));
    case MtlKind::DiaF: return until(tt(), desugar(f.arg()), f.interval());
    case MtlKind::DiaP: return since(tt(), desugar(f.arg()), f.interval());
    case MtlKind::BoxF: return neg(until(tt(), neg(desugar(f.arg())), f.interval()));
    case MtlKind::BoxP: return neg(since(tt(), neg(desugar(f.arg())), f.interval()));
    // K+ f := !((!f) U true), K- f := !((!f) S true)
    case MtlKind::Kplus: return neg(until(neg(desugar(f.arg())), tt()));
    case MtlKind::Kminus: return neg(since(neg(desugar(f.arg())), tt()));
  }
  throw std::logic_error("unreachable");
}

namespace {
void collect_props(const Mtl& f, std::set<std::string>& out) {
  if (f.kind() == MtlKind::Prop) out.insert(f.name());
  if (f.lhs().valid()) collect_props(f.lhs(), out);
  if (f.rhs().valid()) collect_props(f.rhs(), out);
}
}  // namespace

std::set<std::string> props_of(const Mtl& f) {
  std::set<std::string> out;
  collect_props(f, out);
  return out;
}

Mtl substitute_props(const Mtl& f, const std::function<std::optional<Mtl>(const std::string&)>& sub) {
  if (f.kind() == MtlKind::Prop) {
    auto r = sub(f.name());
    return r ? *r : f;
  }
  if (f.kind() == MtlKind::True) return f;
  Mtl a = substitute_props(f.lhs(), sub);
  Mtl b = f.rhs().valid() ? substitute_props(f.rhs(), sub) : Mtl{};
  return mtl::rebuild(f, std::move(a), std::move(b));
}

namespace {
bool is_true(const Mtl& f) { return f.kind() == MtlKind::True; }
bool is_false(const Mtl& f) { return f.kind() == MtlKind::Not && is_true(f.arg()); }
}  // namespace

Mtl simplify(const Mtl& f) {
  using namespace mtl;
  switch (f.kind()) {
    case MtlKind::True:
    case MtlKind::Prop: return f;
    case MtlKind::Not: {
      Mtl a = simplify(f.arg());
      if (a.kind() == MtlKind::Not) return a.arg();
      return neg(a);
    }
    case MtlKind::And: {
      Mtl a = simplify(f.lhs()), b = simplify(f.rhs());
      if (is_false(a) || is_false(b)) return ff();
      if (is_true(a)) return b;
      if (is_true(b) || a == b) return a;
      return conj(a, b);
    }
    case MtlKind::Or: {
      Mtl a = simplify(f.lhs()), b = simplify(f.rhs());
      if (is_true(a) || is_true(b)) return tt();
      if (is_false(a)) return b;
      if (is_false(b) || a == b) return a;
      return disj(a, b);
    }
    case MtlKind::Until:
    case MtlKind::Since: {
      Mtl a = simplify(f.lhs()), b = simplify(f.rhs());
      if (is_false(b)) return ff();
      return rebuild(f, a, b);
    }
    case MtlKind::EvF:
    case MtlKind::EvP: {
      Mtl a = simplify(f.arg());
      if (is_true(a) || is_false(a) || f.offset().is_zero()) return a;
      return rebuild(f, a);
    }
    case MtlKind::DiaF:
    case MtlKind::DiaP: {
      Mtl a = simplify(f.arg());
      if (is_false(a)) return ff();
      return rebuild(f, a);
    }
    case MtlKind::BoxF:
    case MtlKind::BoxP: {
      Mtl a = simplify(f.arg());
      if (is_true(a)) return tt();
      return rebuild(f, a);
    }
    case MtlKind::Kplus:
    case MtlKind::Kminus: {
      Mtl a = simplify(f.arg());
      if (is_true(a) || is_false(a)) return a;
      return rebuild(f, a);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace mtlkit
