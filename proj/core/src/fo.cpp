#include "mtlkit/fo.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace mtlkit {

std::string Term::str() const {
  if (offset.is_zero()) return var;
  if (offset.sign() > 0) return var + "+" + offset.str();
  return var + "-" + (-offset).str();
}

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

std::size_t term_hash(const Term& t) { return mix(std::hash<std::string>{}(t.var), t.offset.hash()); }

bool has_terms(FoKind k) { return k == FoKind::Pred || k == FoKind::Less || k == FoKind::Eq; }

}  // namespace

Fo Fo::make(Node&& n) {
  std::size_t h = static_cast<std::size_t>(n.kind) + 7;
  n.size = 1;
  if (n.kind == FoKind::Pred || n.kind == FoKind::Exists || n.kind == FoKind::Forall)
    h = mix(h, std::hash<std::string>{}(n.name));
  if (has_terms(n.kind)) h = mix(mix(h, term_hash(n.t1)), term_hash(n.t2));
  if (n.a.valid()) {
    h = mix(h, n.a.hash());
    n.size += n.a.size();
  }
  if (n.b.valid()) {
    h = mix(h, n.b.hash());
    n.size += n.b.size();
  }
  n.hash = h;
  return Fo(std::make_shared<const Node>(std::move(n)));
}

FoKind Fo::kind() const { return node_->kind; }
const std::string& Fo::name() const { return node_->name; }
const Term& Fo::t1() const { return node_->t1; }
const Term& Fo::t2() const { return node_->t2; }
const Fo& Fo::lhs() const { return node_->a; }
const Fo& Fo::rhs() const { return node_->b; }
std::size_t Fo::hash() const { return node_->hash; }
std::size_t Fo::size() const { return node_->size; }

bool operator==(const Fo& a, const Fo& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.hash == y.hash && x.size == y.size && x.kind == y.kind && x.name == y.name && x.t1 == y.t1 &&
         x.t2 == y.t2 && x.a == y.a && x.b == y.b;
}

namespace fo {

namespace {
Fo node(FoKind k, std::string name, Term t1, Term t2, Fo a, Fo b) {
  Fo::Node n{k, std::move(name), std::move(t1), std::move(t2), std::move(a), std::move(b)};
  return Fo::make(std::move(n));
}
}  // namespace

Term var(std::string v, Rational offset) { return Term{std::move(v), std::move(offset)}; }

Fo tt() { return node(FoKind::True, {}, {}, {}, {}, {}); }
Fo ff() { return neg(tt()); }
Fo pred(std::string name, Term t) { return node(FoKind::Pred, std::move(name), std::move(t), {}, {}, {}); }
Fo less(Term a, Term b) { return node(FoKind::Less, {}, std::move(a), std::move(b), {}, {}); }
Fo eq(Term a, Term b) { return node(FoKind::Eq, {}, std::move(a), std::move(b), {}, {}); }
Fo leq(Term a, Term b) { return neg(less(std::move(b), std::move(a))); }
Fo conj(Fo a, Fo b) { return node(FoKind::And, {}, {}, {}, std::move(a), std::move(b)); }
Fo disj(Fo a, Fo b) { return node(FoKind::Or, {}, {}, {}, std::move(a), std::move(b)); }
Fo neg(Fo a) { return node(FoKind::Not, {}, {}, {}, std::move(a), {}); }
Fo implies(Fo a, Fo b) { return node(FoKind::Implies, {}, {}, {}, std::move(a), std::move(b)); }
Fo exists(std::string v, Fo body) { return node(FoKind::Exists, std::move(v), {}, {}, std::move(body), {}); }
Fo forall(std::string v, Fo body) { return node(FoKind::Forall, std::move(v), {}, {}, std::move(body), {}); }

Fo exists_in(std::string v, const Term& lo, const Term& hi, Fo body) {
  Term tv = var(v);
  return exists(v, conj(conj(leq(lo, tv), less(tv, hi)), std::move(body)));
}

Fo conj_all(const std::vector<Fo>& xs) {
  if (xs.empty()) return tt();
  Fo acc = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) acc = conj(acc, xs[i]);
  return acc;
}

Fo disj_all(const std::vector<Fo>& xs) {
  if (xs.empty()) return ff();
  Fo acc = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) acc = disj(acc, xs[i]);
  return acc;
}

}  // namespace fo

namespace {

void collect_free(const Fo& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case FoKind::True: return;
    case FoKind::Pred:
      if (!bound.count(f.t1().var)) out.insert(f.t1().var);
      return;
    case FoKind::Less:
    case FoKind::Eq:
      if (!bound.count(f.t1().var)) out.insert(f.t1().var);
      if (!bound.count(f.t2().var)) out.insert(f.t2().var);
      return;
    case FoKind::Exists:
    case FoKind::Forall: {
      bool fresh = bound.insert(f.name()).second;
      collect_free(f.body(), bound, out);
      if (fresh) bound.erase(f.name());
      return;
    }
    default:
      collect_free(f.lhs(), bound, out);
      if (f.rhs().valid()) collect_free(f.rhs(), bound, out);
  }
}

void collect_names(const Fo& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case FoKind::True: return;
    case FoKind::Pred: out.insert(f.t1().var); return;
    case FoKind::Less:
    case FoKind::Eq:
      out.insert(f.t1().var);
      out.insert(f.t2().var);
      return;
    case FoKind::Exists:
    case FoKind::Forall:
      out.insert(f.name());
      collect_names(f.body(), out);
      return;
    default:
      collect_names(f.lhs(), out);
      if (f.rhs().valid()) collect_names(f.rhs(), out);
  }
}

Fo rebuild(const Fo& shape, Fo a, Fo b) {
  switch (shape.kind()) {
    case FoKind::And: return fo::conj(std::move(a), std::move(b));
    case FoKind::Or: return fo::disj(std::move(a), std::move(b));
    case FoKind::Implies: return fo::implies(std::move(a), std::move(b));
    case FoKind::Not: return fo::neg(std::move(a));
    case FoKind::Exists: return fo::exists(shape.name(), std::move(a));
    case FoKind::Forall: return fo::forall(shape.name(), std::move(a));
    default: return shape;
  }
}

// Applies a variable renaming map to terms (free occurrences only).
Term rename_term(const Term& t, const std::map<std::string, Term>& m) {
  auto it = m.find(t.var);
  if (it == m.end()) return t;
  return it->second.plus(t.offset);
}

Fo subst_map(const Fo& f, std::map<std::string, Term> m, std::set<std::string>& taken) {
  switch (f.kind()) {
    case FoKind::True: return f;
    case FoKind::Pred: return fo::pred(f.name(), rename_term(f.t1(), m));
    case FoKind::Less: return fo::less(rename_term(f.t1(), m), rename_term(f.t2(), m));
    case FoKind::Eq: return fo::eq(rename_term(f.t1(), m), rename_term(f.t2(), m));
    case FoKind::Exists:
    case FoKind::Forall: {
      std::string v = f.name();
      m.erase(v);
      if (m.empty()) return f;
      // Capture check: does any replacement term mention v?
      bool capture = false;
      for (const auto& [k, t] : m)
        if (t.var == v) capture = true;
      if (capture) {
        std::string nv = fresh_name(v, taken);
        taken.insert(nv);
        m[v] = fo::var(nv);
        v = nv;
      }
      Fo body = subst_map(f.body(), std::move(m), taken);
      return f.kind() == FoKind::Exists ? fo::exists(v, std::move(body)) : fo::forall(v, std::move(body));
    }
    default: {
      Fo a = subst_map(f.lhs(), m, taken);
      Fo b = f.rhs().valid() ? subst_map(f.rhs(), m, taken) : Fo{};
      return rebuild(f, std::move(a), std::move(b));
    }
  }
}

Fo alpha(const Fo& f, std::map<std::string, std::string>& ren, std::set<std::string>& taken) {
  auto rt = [&](const Term& t) {
    auto it = ren.find(t.var);
    return it == ren.end() ? t : Term{it->second, t.offset};
  };
  switch (f.kind()) {
    case FoKind::True: return f;
    case FoKind::Pred: return fo::pred(f.name(), rt(f.t1()));
    case FoKind::Less: return fo::less(rt(f.t1()), rt(f.t2()));
    case FoKind::Eq: return fo::eq(rt(f.t1()), rt(f.t2()));
    case FoKind::Exists:
    case FoKind::Forall: {
      std::string v = f.name();
      std::string nv = taken.count(v) ? fresh_name(v, taken) : v;
      taken.insert(nv);
      auto saved = ren.find(v) == ren.end() ? std::optional<std::string>{} : std::optional<std::string>{ren[v]};
      ren[v] = nv;
      Fo body = alpha(f.body(), ren, taken);
      if (saved)
        ren[v] = *saved;
      else
        ren.erase(v);
      return f.kind() == FoKind::Exists ? fo::exists(nv, std::move(body)) : fo::forall(nv, std::move(body));
    }
    default: {
      Fo a = alpha(f.lhs(), ren, taken);
      Fo b = f.rhs().valid() ? alpha(f.rhs(), ren, taken) : Fo{};
      return rebuild(f, std::move(a), std::move(b));
    }
  }
}

}  // namespace

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  // strip trailing digits so that y1 -> y2 rather than y11
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = base;
  for (int k = 1;; ++k) {
    std::string c = stem + std::to_string(k);
    if (!taken.count(c)) return c;
  }
}

std::set<std::string> free_vars(const Fo& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

Fo subst_term(const Fo& f, const std::string& v, const Term& t) {
  std::set<std::string> taken;
  collect_names(f, taken);
  taken.insert(t.var);
  return subst_map(f, {{v, t}}, taken);
}

Fo alpha_normalize(const Fo& f) {
  std::set<std::string> taken = free_vars(f);
  std::map<std::string, std::string> ren;
  return alpha(f, ren, taken);
}

Fo substitute_preds(const Fo& f, const std::function<std::optional<Fo>(const std::string&, const Term&)>& sub) {
  switch (f.kind()) {
    case FoKind::True:
    case FoKind::Less:
    case FoKind::Eq: return f;
    case FoKind::Pred: {
      auto r = sub(f.name(), f.t1());
      return r ? *r : f;
    }
    default: {
      Fo a = substitute_preds(f.lhs(), sub);
      Fo b = f.rhs().valid() ? substitute_preds(f.rhs(), sub) : Fo{};
      return rebuild(f, std::move(a), std::move(b));
    }
  }
}

int quantifier_depth(const Fo& f) {
  switch (f.kind()) {
    case FoKind::True:
    case FoKind::Pred:
    case FoKind::Less:
    case FoKind::Eq: return 0;
    case FoKind::Exists:
    case FoKind::Forall: return 1 + quantifier_depth(f.body());
    default: return std::max(quantifier_depth(f.lhs()), f.rhs().valid() ? quantifier_depth(f.rhs()) : 0);
  }
}

namespace {
void collect_preds(const Fo& f, std::set<std::string>& out) {
  if (f.kind() == FoKind::Pred) out.insert(f.name());
  if (f.lhs().valid()) collect_preds(f.lhs(), out);
  if (f.rhs().valid()) collect_preds(f.rhs(), out);
}
void collect_offsets(const Fo& f, std::set<Rational>& out) {
  if (f.kind() == FoKind::Pred) out.insert(f.t1().offset);
  if (f.kind() == FoKind::Less || f.kind() == FoKind::Eq) {
    out.insert(f.t1().offset);
    out.insert(f.t2().offset);
  }
  if (f.lhs().valid()) collect_offsets(f.lhs(), out);
  if (f.rhs().valid()) collect_offsets(f.rhs(), out);
}
bool is_true(const Fo& f) { return f.kind() == FoKind::True; }
bool is_false(const Fo& f) { return f.kind() == FoKind::Not && is_true(f.lhs()); }
}  // namespace

std::set<std::string> preds_of(const Fo& f) {
  std::set<std::string> out;
  collect_preds(f, out);
  return out;
}

std::set<Rational> offsets_of(const Fo& f) {
  std::set<Rational> out;
  collect_offsets(f, out);
  return out;
}

Fo simplify(const Fo& f) {
  switch (f.kind()) {
    case FoKind::True:
    case FoKind::Pred: return f;
    case FoKind::Less:
      if (f.t1().var == f.t2().var) return f.t1().offset < f.t2().offset ? fo::tt() : fo::ff();
      return f;
    case FoKind::Eq:
      if (f.t1().var == f.t2().var) return f.t1().offset == f.t2().offset ? fo::tt() : fo::ff();
      return f;
    case FoKind::Not: {
      Fo a = simplify(f.lhs());
      if (a.kind() == FoKind::Not) return a.lhs();
      return fo::neg(a);
    }
    case FoKind::And: {
      Fo a = simplify(f.lhs()), b = simplify(f.rhs());
      if (is_false(a) || is_false(b)) return fo::ff();
      if (is_true(a)) return b;
      if (is_true(b) || a == b) return a;
      return fo::conj(a, b);
    }
    case FoKind::Or: {
      Fo a = simplify(f.lhs()), b = simplify(f.rhs());
      if (is_true(a) || is_true(b)) return fo::tt();
      if (is_false(a)) return b;
      if (is_false(b) || a == b) return a;
      return fo::disj(a, b);
    }
    case FoKind::Implies: {
      Fo a = simplify(f.lhs()), b = simplify(f.rhs());
      if (is_false(a) || is_true(b)) return fo::tt();
      if (is_true(a)) return b;
      if (is_false(b)) return simplify(fo::neg(a));
      return fo::implies(a, b);
    }
    case FoKind::Exists:
    case FoKind::Forall: {
      Fo b = simplify(f.body());
      if (is_true(b) || is_false(b)) return b;  // the domain is non-empty
      return rebuild(f, b, {});
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace mtlkit
