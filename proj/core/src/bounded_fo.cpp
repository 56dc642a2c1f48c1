#include <map>

#include "transform_internal.hpp"

namespace mtlkit {

namespace {

using namespace detail;

const std::string kShiftTag = "_at_";

std::string shifted_name(const std::string& p, std::int64_t j) {
  return p + kShiftTag + (j < 0 ? "m" + std::to_string(-j) : std::to_string(j));
}

std::int64_t integral(const Rational& q, const Fo& where) {
  if (!q.is_integer()) throw TransformError("non-integral constant in " + print_fo(where));
  return q.numerator_i64();
}

Fo range(const std::string& v, const Term& lo, const Term& hi) {
  return fo::conj(fo::leq(lo, fo::var(v)), fo::less(fo::var(v), hi));
}

// Body of a quantifier in the exact Bet shape: the formula after the guard.
const Fo& guarded_body(const Fo& q) { return q.body().rhs(); }

void names_of(const Fo& f, std::set<std::string>& out) {
  if (!f.valid()) return;
  switch (f.kind()) {
    case FoKind::Pred: out.insert(f.t1().var); return;
    case FoKind::Less:
    case FoKind::Eq:
      out.insert(f.t1().var);
      out.insert(f.t2().var);
      return;
    case FoKind::Exists:
    case FoKind::Forall: out.insert(f.name()); break;
    default: break;
  }
  names_of(f.lhs(), out);
  names_of(f.rhs(), out);
}

Fo relativize(const Fo& f, std::int64_t n, const std::map<std::string, std::int64_t>& shift) {
  using namespace fo;
  auto moved = [&](const Term& t) {
    auto it = shift.find(t.var);
    return it == shift.end() ? t : t.plus(Rational(it->second));
  };
  switch (f.kind()) {
    case FoKind::True: return f;
    case FoKind::Pred: {
      Term t = moved(f.t1());
      return pred(shifted_name(f.name(), integral(t.offset, f)), var(t.var));
    }
    case FoKind::Less: return less(moved(f.t1()), moved(f.t2()));
    case FoKind::Eq: return eq(moved(f.t1()), moved(f.t2()));
    case FoKind::Not: return neg(relativize(f.lhs(), n, shift));
    case FoKind::And: return conj(relativize(f.lhs(), n, shift), relativize(f.rhs(), n, shift));
    case FoKind::Or: return disj(relativize(f.lhs(), n, shift), relativize(f.rhs(), n, shift));
    case FoKind::Implies: return implies(relativize(f.lhs(), n, shift), relativize(f.rhs(), n, shift));
    case FoKind::Exists:
    case FoKind::Forall: {
      std::vector<Fo> alts;
      for (std::int64_t j = -n; j < n; ++j) {
        auto s = shift;
        s[f.name()] = j;
        alts.push_back(relativize(guarded_body(f), n, s));
      }
      Fo g = range(f.name(), var("x"), var("x", Rational(1)));
      if (f.kind() == FoKind::Exists) return exists(f.name(), conj(g, disj_all(alts)));
      return forall(f.name(), implies(g, conj_all(alts)));
    }
  }
  throw std::logic_error("unreachable");
}

Fo strip(const Fo& f, const std::string& end) {
  using namespace fo;
  switch (f.kind()) {
    case FoKind::True: return f;
    case FoKind::Pred:
      if (!f.t1().offset.is_zero()) throw TransformError("predicate on a shifted term: " + print_fo(f));
      return f;
    case FoKind::Less:
    case FoKind::Eq: {
      std::int64_t k1 = integral(f.t1().offset, f), k2 = integral(f.t2().offset, f);
      const std::string& u = f.t1().var;
      const std::string& v = f.t2().var;
      if (f.kind() == FoKind::Eq) {
        if (k1 != k2) return ff();
        return u == v ? tt() : eq(var(u), var(v));
      }
      if (k1 < k2) return tt();
      if (k1 > k2 || u == v) return ff();
      return less(var(u), var(v));
    }
    case FoKind::Not: return neg(strip(f.lhs(), end));
    case FoKind::And: return conj(strip(f.lhs(), end), strip(f.rhs(), end));
    case FoKind::Or: return disj(strip(f.lhs(), end), strip(f.rhs(), end));
    case FoKind::Implies: return implies(strip(f.lhs(), end), strip(f.rhs(), end));
    case FoKind::Exists:
    case FoKind::Forall: {
      Fo g = range(f.name(), var("x"), var(end));
      Fo chi = strip(guarded_body(f), end);
      if (f.kind() == FoKind::Exists) return exists(f.name(), conj(g, chi));
      return forall(f.name(), implies(g, chi));
    }
  }
  throw std::logic_error("unreachable");
}

// Negation normal form: Not only on atoms, no Implies.
Fo nnf(const Fo& f, bool negated) {
  using namespace fo;
  switch (f.kind()) {
    case FoKind::True:
    case FoKind::Pred:
    case FoKind::Less:
    case FoKind::Eq: return negated ? neg(f) : f;
    case FoKind::Not: return nnf(f.lhs(), !negated);
    case FoKind::And:
      return negated ? disj(nnf(f.lhs(), true), nnf(f.rhs(), true)) : conj(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case FoKind::Or:
      return negated ? conj(nnf(f.lhs(), true), nnf(f.rhs(), true)) : disj(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case FoKind::Implies:
      return negated ? conj(nnf(f.lhs(), false), nnf(f.rhs(), true)) : disj(nnf(f.lhs(), true), nnf(f.rhs(), false));
    case FoKind::Exists: return negated ? forall(f.name(), nnf(f.body(), true)) : exists(f.name(), nnf(f.body(), false));
    case FoKind::Forall: return negated ? exists(f.name(), nnf(f.body(), true)) : forall(f.name(), nnf(f.body(), false));
  }
  throw std::logic_error("unreachable");
}

bool quantifier_free(const Fo& f) {
  if (!f.valid()) return true;
  if (f.kind() == FoKind::Exists || f.kind() == FoKind::Forall) return false;
  return quantifier_free(f.lhs()) && quantifier_free(f.rhs());
}

// Existential conjunctive alternative: exists vars. lits, every var ranging over [x, end).
struct Alt {
  std::vector<std::string> vars;
  std::vector<Fo> lits;  // atoms, negated atoms and universal formulas
};

// Recognizes Boolean combinations of decomposition formulas over Bet(x, end).
// Each existential block is split into disjuncts; every weak order of its
// variables gives one chain x = c_0 < c_1 < ... < c_m < end.
class Matcher {
 public:
  Matcher(std::string end, std::size_t limit) : end_(std::move(end)), budget_("unit_to_mtl", limit) {}

  Mtl top(const Fo& f) {
    switch (f.kind()) {
      case FoKind::True: return mtl::tt();
      case FoKind::And: return sconj(top(f.lhs()), top(f.rhs()));
      case FoKind::Or: return sdisj(top(f.lhs()), top(f.rhs()));
      case FoKind::Exists: return block(f);
      case FoKind::Forall: return sneg(block(fo::exists(f.name(), nnf(f.body(), true))));
      default: break;
    }
    std::map<std::string, int> level{{"x", 0}};
    return eval_atom(f, level, "", 0, 2);
  }

 private:
  Mtl block(const Fo& f) {
    Mtl out = mtl::ff();
    for (const Alt& a : alts(f)) out = sdisj(out, alternative(a));
    return out;
  }

  std::vector<Alt> alts(const Fo& f) {
    switch (f.kind()) {
      case FoKind::True: return {Alt{}};
      case FoKind::And: {
        std::vector<Alt> l = alts(f.lhs()), r = alts(f.rhs()), out;
        budget_.check(l.size() * r.size());
        for (const auto& a : l)
          for (const auto& b : r) {
            Alt c = a;
            c.vars.insert(c.vars.end(), b.vars.begin(), b.vars.end());
            c.lits.insert(c.lits.end(), b.lits.begin(), b.lits.end());
            out.push_back(std::move(c));
          }
        return out;
      }
      case FoKind::Or: {
        std::vector<Alt> l = alts(f.lhs()), r = alts(f.rhs());
        l.insert(l.end(), r.begin(), r.end());
        budget_.check(l.size());
        return l;
      }
      case FoKind::Exists: {
        std::vector<Alt> out = alts(f.body());
        for (auto& a : out) a.vars.insert(a.vars.begin(), f.name());
        return out;
      }
      case FoKind::Not:
        if (f.lhs().kind() == FoKind::True) return {};
        return {Alt{{}, {f}}};
      default: return {Alt{{}, {f}}};
    }
  }

  // Truth of an atom (or negated atom) under an order of levels; `u` sits at `u_at`
  // (in doubled units, odd values being gaps), and `end` sits at `end_at`.
  Mtl eval_atom(const Fo& lit, const std::map<std::string, int>& level, const std::string& u, int u_at, int end_at) {
    bool positive = lit.kind() != FoKind::Not;
    const Fo& a = positive ? lit : lit.lhs();
    auto pos = [&](const Term& t) -> int {
      if (!t.offset.is_zero()) throw RequiresGpssNormalization(lit);
      if (t.var == u) return u_at;
      if (t.var == end_) return end_at;
      auto it = level.find(t.var);
      if (it == level.end()) throw RequiresGpssNormalization(lit);
      return 2 * it->second;
    };
    Mtl v;
    switch (a.kind()) {
      case FoKind::True: v = mtl::tt(); break;
      case FoKind::Less: v = pos(a.t1()) < pos(a.t2()) ? mtl::tt() : mtl::ff(); break;
      case FoKind::Eq: v = pos(a.t1()) == pos(a.t2()) ? mtl::tt() : mtl::ff(); break;
      case FoKind::Pred:
        if (!a.t1().offset.is_zero() || (a.t1().var != u && !(u.empty() && a.t1().var == "x")))
          throw RequiresGpssNormalization(lit);
        v = mtl::prop(a.name());
        break;
      default: throw RequiresGpssNormalization(lit);
    }
    return positive ? v : sneg(v);
  }

  // Quantifier-free NNF formula with u placed at u_at.
  Mtl eval_matrix(const Fo& f, const std::map<std::string, int>& level, const std::string& u, int u_at, int end_at) {
    switch (f.kind()) {
      case FoKind::And: return sconj(eval_matrix(f.lhs(), level, u, u_at, end_at), eval_matrix(f.rhs(), level, u, u_at, end_at));
      case FoKind::Or: return sdisj(eval_matrix(f.lhs(), level, u, u_at, end_at), eval_matrix(f.rhs(), level, u, u_at, end_at));
      default: return eval_atom(f, level, u, u_at, end_at);
    }
  }

  Mtl alternative(const Alt& a) {
    const std::size_t v = a.vars.size();
    if (v > 6) throw RequiresGpssNormalization(fo::tt());
    std::vector<Fo> univ, local;
    for (const Fo& l : a.lits) (l.kind() == FoKind::Forall ? univ : local).push_back(l);
    for (const Fo& l : univ)
      if (!quantifier_free(l.body())) throw RequiresGpssNormalization(l);
    Mtl out = mtl::ff();
    std::vector<int> lv(v, 0);
    for (;;) {
      budget_.step();
      if (contiguous(lv)) out = sdisj(out, ordered(a, lv, univ, local));
      std::size_t i = 0;
      while (i < v && ++lv[i] > static_cast<int>(v)) lv[i++] = 0;
      if (i == v) break;
    }
    return out;
  }

  static bool contiguous(const std::vector<int>& lv) {
    int m = 0;
    for (int l : lv) m = std::max(m, l);
    std::vector<bool> used(static_cast<std::size_t>(m) + 1, false);
    for (int l : lv) used[static_cast<std::size_t>(l)] = true;
    for (int i = 1; i <= m; ++i)
      if (!used[static_cast<std::size_t>(i)]) return false;
    return true;
  }

  Mtl ordered(const Alt& a, const std::vector<int>& lv, const std::vector<Fo>& univ, const std::vector<Fo>& local) {
    int m = 0;
    for (int l : lv) m = std::max(m, l);
    const int end_at = 2 * (m + 1);
    std::map<std::string, int> level{{"x", 0}};
    for (std::size_t i = 0; i < a.vars.size(); ++i) level[a.vars[i]] = lv[i];
    DecompositionFormula d;
    d.points.assign(static_cast<std::size_t>(m) + 1, mtl::tt());
    d.gaps.assign(static_cast<std::size_t>(m) + 1, mtl::tt());
    for (const Fo& l : local) {
      bool positive = l.kind() != FoKind::Not;
      const Fo& atom = positive ? l : l.lhs();
      if (atom.kind() == FoKind::Pred) {
        auto it = level.find(atom.t1().var);
        if (it == level.end() || !atom.t1().offset.is_zero()) throw RequiresGpssNormalization(l);
        Mtl p = mtl::prop(atom.name());
        auto& slot = d.points[static_cast<std::size_t>(it->second)];
        slot = sconj(slot, positive ? p : sneg(p));
        continue;
      }
      if (is_false(eval_atom(l, level, "", 0, end_at))) return mtl::ff();
    }
    for (const Fo& l : univ) {
      const std::string& u = l.name();
      for (int at = 0; at < end_at; ++at) {
        Mtl c = eval_matrix(l.body(), level, u, at, end_at);
        auto& slot = at % 2 == 0 ? d.points[static_cast<std::size_t>(at / 2)] : d.gaps[static_cast<std::size_t>(at / 2)];
        slot = sconj(slot, c);
      }
    }
    for (const auto& p : d.points)
      if (is_false(p)) return mtl::ff();
    return decomposition_to_mtl(d);
  }

  std::string end_;
  Budget budget_;
};

void flatten(const Fo& f, FoKind k, std::vector<Fo>& out) {
  if (f.kind() == k) {
    flatten(f.lhs(), k, out);
    flatten(f.rhs(), k, out);
  } else {
    out.push_back(f);
  }
}

// w + a = v + b as w := v + (b - a).
std::optional<Term> defining(const Fo& lit, const std::string& w) {
  if (lit.kind() != FoKind::Eq) return std::nullopt;
  Term s = lit.t1(), t = lit.t2();
  if (t.var == w) std::swap(s, t);
  if (s.var != w || t.var == w) return std::nullopt;
  return t.plus(-s.offset);
}

// One-point rule on NNF: exists w (w = t & ...) and forall w (!w = t | ...).
Fo one_point(const Fo& f) {
  using namespace fo;
  switch (f.kind()) {
    case FoKind::And: return conj(one_point(f.lhs()), one_point(f.rhs()));
    case FoKind::Or: return disj(one_point(f.lhs()), one_point(f.rhs()));
    case FoKind::Exists:
    case FoKind::Forall: {
      bool ex = f.kind() == FoKind::Exists;
      Fo body = one_point(f.body());
      std::vector<Fo> parts;
      flatten(body, ex ? FoKind::And : FoKind::Or, parts);
      for (const Fo& p : parts) {
        const Fo& lit = ex ? p : (p.kind() == FoKind::Not ? p.lhs() : Fo{});
        if (!lit.valid()) continue;
        if (auto t = defining(lit, f.name())) return one_point(simplify(subst_term(body, f.name(), *t)));
      }
      return ex ? exists(f.name(), body) : forall(f.name(), body);
    }
    default: return f;
  }
}

Mtl units(const Fo& f, std::size_t limit) {
  switch (f.kind()) {
    case FoKind::True: return mtl::tt();
    case FoKind::Not: return sneg(units(f.lhs(), limit));
    case FoKind::And: return sconj(units(f.lhs(), limit), units(f.rhs(), limit));
    case FoKind::Or: return sdisj(units(f.lhs(), limit), units(f.rhs(), limit));
    case FoKind::Implies: return sdisj(sneg(units(f.lhs(), limit)), units(f.rhs(), limit));
    case FoKind::Exists:
    case FoKind::Forall: return unit_to_mtl(unit_strip_plus_one(f));
    case FoKind::Less:
    case FoKind::Eq: {
      Fo s = simplify(f);
      if (s.kind() == FoKind::True) return mtl::tt();
      if (s.kind() == FoKind::Not && s.lhs().kind() == FoKind::True) return mtl::ff();
      throw TransformError("undecided comparison in bounded formula: " + print_fo(f));
    }
    case FoKind::Pred: throw TransformError("predicate on the free variable after relativization: " + print_fo(f));
  }
  throw std::logic_error("unreachable");
}

Mtl strip_shift(const Mtl& f) {
  if (f.kind() == MtlKind::Prop) {
    const std::string& s = f.name();
    auto at = s.rfind(kShiftTag);
    if (at == std::string::npos) return f;
    std::string base = s.substr(0, at), idx = s.substr(at + kShiftTag.size());
    bool neg = !idx.empty() && idx[0] == 'm';
    std::int64_t j = std::stoll(neg ? idx.substr(1) : idx);
    Mtl p = mtl::prop(base);
    if (j == 0) return p;
    return neg ? mtl::ev_p(Rational(j), p) : mtl::ev_f(Rational(j), p);
  }
  if (!f.lhs().valid()) return f;
  Mtl a = strip_shift(f.lhs());
  Mtl b = f.rhs().valid() ? strip_shift(f.rhs()) : Mtl{};
  return mtl::rebuild(f, a, b);
}

}  // namespace

Fo relativize_to_unit(const Fo& phi, std::int64_t n) {
  if (!is_n_bounded(phi, n)) throw TransformError("formula is not " + std::to_string(n) + "-bounded: " + print_fo(phi));
  for (const auto& p : preds_of(phi))
    if (p.find(kShiftTag) != std::string::npos) throw TransformError("predicate name clashes with shifted names: " + p);
  Fo g = normalize_bet(phi, fo::var("x", Rational(-n)), fo::var("x", Rational(n)));
  return simplify(relativize(g, n, {}));
}

Fo unit_strip_plus_one(const Fo& phi) {
  if (!is_unit(phi)) throw TransformError("not a unit formula: " + print_fo(phi));
  Fo g = normalize_bet(phi, fo::var("x"), fo::var("x", Rational(1)));
  std::set<std::string> taken;
  names_of(g, taken);
  return simplify(strip(g, fresh_name("y", taken)));
}

Mtl unit_to_mtl(const Fo& psi) {
  std::string end;
  for (const auto& v : free_vars(psi))
    if (v != "x") {
      if (!end.empty()) throw TransformError("unit formula has more than two free variables");
      end = v;
    }
  if (end.empty()) {
    std::set<std::string> taken;
    names_of(psi, taken);
    end = fresh_name("y", taken);
  }
  return Matcher(end, kDefaultBudget).top(one_point(nnf(simplify(psi), false)));
}

Mtl strip_shift_predicates(const Mtl& phi) { return strip_shift(phi); }

Mtl bounded_fo_to_mtl(const Fo& phi, std::int64_t n) {
  return strip_shift_predicates(units(relativize_to_unit(phi, n), kDefaultBudget));
}

}  // namespace mtlkit
