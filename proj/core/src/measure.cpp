#include "mtlkit/measure.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace mtlkit {

namespace {

struct Reach {
  Bound fr, pr;
};

const Bound kZero = Bound(Rational(0));

Bound sup(const Interval& i) { return i.hi; }
Bound inf(const Interval& i) { return i.lo; }

// fr of `target` reached through a constraint starting at n: max(0, r - n).
Bound behind(const Bound& r, const Bound& n) {
  if (r.is_pos_inf()) return r;
  return max(kZero, r - n);
}

Reach reach(const Mtl& f) {
  switch (f.kind()) {
    case MtlKind::True:
    case MtlKind::Prop: return {kZero, kZero};
    case MtlKind::Not: return reach(f.arg());
    case MtlKind::And:
    case MtlKind::Or: {
      Reach a = reach(f.lhs()), b = reach(f.rhs());
      return {max(a.fr, b.fr), max(a.pr, b.pr)};
    }
    case MtlKind::Until: {
      Reach a = reach(f.lhs()), b = reach(f.rhs());
      return {sup(f.interval()) + max(a.fr, b.fr), max(a.pr, behind(b.pr, inf(f.interval())))};
    }
    case MtlKind::Since: {
      Reach a = reach(f.lhs()), b = reach(f.rhs());
      return {max(a.fr, behind(b.fr, inf(f.interval()))), sup(f.interval()) + max(a.pr, b.pr)};
    }
    case MtlKind::EvF: {
      Reach a = reach(f.arg());
      if (f.offset().is_zero()) return a;
      return {Bound(f.offset()) + a.fr, behind(a.pr, f.offset())};
    }
    case MtlKind::EvP: {
      Reach a = reach(f.arg());
      if (f.offset().is_zero()) return a;
      return {behind(a.fr, f.offset()), Bound(f.offset()) + a.pr};
    }
    case MtlKind::DiaF:
    case MtlKind::BoxF: {
      Reach a = reach(f.arg());
      return {sup(f.interval()) + a.fr, behind(a.pr, inf(f.interval()))};
    }
    case MtlKind::DiaP:
    case MtlKind::BoxP: {
      Reach a = reach(f.arg());
      return {behind(a.fr, inf(f.interval())), sup(f.interval()) + a.pr};
    }
    case MtlKind::Kplus: {
      Reach a = reach(f.arg());
      return {Bound(Rational(1)) + a.fr, a.pr};
    }
    case MtlKind::Kminus: {
      Reach a = reach(f.arg());
      return {a.fr, Bound(Rational(1)) + a.pr};
    }
  }
  return {kZero, kZero};
}

bool has_interval(const Mtl& f) {
  switch (f.kind()) {
    case MtlKind::Until:
    case MtlKind::Since:
    case MtlKind::DiaF:
    case MtlKind::DiaP:
    case MtlKind::BoxF:
    case MtlKind::BoxP: return true;
    default: return false;
  }
}

int count_unbounded(const Mtl& f, bool future) {
  int c = 0;
  if (has_interval(f) && !f.interval().hi.is_finite()) {
    bool is_future = f.kind() == MtlKind::Until || f.kind() == MtlKind::DiaF || f.kind() == MtlKind::BoxF;
    if (is_future == future) c = 1;
  }
  if (f.lhs().valid()) c += count_unbounded(f.lhs(), future);
  if (f.rhs().valid()) c += count_unbounded(f.rhs(), future);
  return c;
}

// F[=N] phi in any of its spellings.
std::optional<std::pair<Rational, Mtl>> punctual(const Mtl& f, bool future) {
  MtlKind ev = future ? MtlKind::EvF : MtlKind::EvP;
  MtlKind dia = future ? MtlKind::DiaF : MtlKind::DiaP;
  MtlKind box = future ? MtlKind::BoxF : MtlKind::BoxP;
  MtlKind bin = future ? MtlKind::Until : MtlKind::Since;
  if (f.kind() == ev && f.offset().sign() > 0) return std::make_pair(f.offset(), f.arg());
  if ((f.kind() == dia || f.kind() == box) && f.interval().is_singleton())
    return std::make_pair(f.interval().lo.value(), f.arg());
  if (f.kind() == bin && f.interval().is_singleton() && f.lhs().kind() == MtlKind::True)
    return std::make_pair(f.interval().lo.value(), f.rhs());
  return std::nullopt;
}

bool reach_ok(const Bound& r, const Rational& n, SeparationMode mode) {
  Bound limit = Bound(n - Rational(1));
  return mode == SeparationMode::Strict ? r < limit : r <= limit;
}

}  // namespace

Bound future_reach(const Mtl& phi) { return reach(phi).fr; }
Bound past_reach(const Mtl& phi) { return reach(phi).pr; }

int unbounding_depth(const Mtl& f) {
  int d = 0;
  if (f.lhs().valid()) d = unbounding_depth(f.lhs());
  if (f.rhs().valid()) d = std::max(d, unbounding_depth(f.rhs()));
  if (has_interval(f) && !f.interval().hi.is_finite()) ++d;
  return d;
}

bool is_bounded(const Mtl& f) { return count_unbounded(f, true) == 0 && count_unbounded(f, false) == 0; }

int unbounded_until_count(const Mtl& f) { return count_unbounded(f, true); }
int unbounded_since_count(const Mtl& f) { return count_unbounded(f, false); }

bool is_syntactically_separated(const Mtl& f, SeparationMode mode) {
  if (is_bounded(f)) return true;
  if (auto p = punctual(f, true); p && reach_ok(past_reach(p->second), p->first, mode)) return true;
  if (auto p = punctual(f, false); p && reach_ok(future_reach(p->second), p->first, mode)) return true;
  switch (f.kind()) {
    case MtlKind::Not: return is_syntactically_separated(f.arg(), mode);
    case MtlKind::And:
    case MtlKind::Or: return is_syntactically_separated(f.lhs(), mode) && is_syntactically_separated(f.rhs(), mode);
    default: return false;
  }
}

// ---------------------------------------------------------------------------
// Bet recognition

namespace {

Fo range_of(const std::string& z, const Term& lo, const Term& hi) {
  return fo::conj(fo::leq(lo, fo::var(z)), fo::less(fo::var(z), hi));
}

bool bet_rec(const Fo& f, const Term& lo, const Term& hi, std::set<std::string>& bound) {
  switch (f.kind()) {
    case FoKind::True:
    case FoKind::Less:
    case FoKind::Eq: return true;
    case FoKind::Pred: return bound.count(f.t1().var) && f.t1().offset.is_zero();
    case FoKind::Not: return bet_rec(f.lhs(), lo, hi, bound);
    case FoKind::And:
    case FoKind::Or:
    case FoKind::Implies: return bet_rec(f.lhs(), lo, hi, bound) && bet_rec(f.rhs(), lo, hi, bound);
    case FoKind::Exists:
    case FoKind::Forall: {
      const Fo& b = f.body();
      FoKind joint = f.kind() == FoKind::Exists ? FoKind::And : FoKind::Implies;
      if (b.kind() != joint || !(b.lhs() == range_of(f.name(), lo, hi))) return false;
      bool fresh = bound.insert(f.name()).second;
      bool ok = bet_rec(b.rhs(), lo, hi, bound);
      if (fresh) bound.erase(f.name());
      return ok;
    }
  }
  return false;
}

// Difference constraints u - v <= w (or < w when strict).
struct Diff {
  Rational w;
  bool strict;
};

bool tighter(const Diff& a, const Diff& b) { return a.w < b.w || (a.w == b.w && a.strict && !b.strict); }

struct Facts {
  std::vector<std::tuple<std::string, std::string, Diff>> edges;

  void atom(const Fo& f, bool positive) {
    const Term& a = f.t1();
    const Term& b = f.t2();
    if (a.var == b.var) return;
    if (f.kind() == FoKind::Eq) {
      if (!positive) return;
      edges.emplace_back(a.var, b.var, Diff{b.offset - a.offset, false});
      edges.emplace_back(b.var, a.var, Diff{a.offset - b.offset, false});
      return;
    }
    if (positive) edges.emplace_back(a.var, b.var, Diff{b.offset - a.offset, true});
    else edges.emplace_back(b.var, a.var, Diff{a.offset - b.offset, false});
  }

  // Atoms that hold whenever f has the given truth value.
  void collect(const Fo& f, bool positive) {
    switch (f.kind()) {
      case FoKind::Less:
      case FoKind::Eq: atom(f, positive); return;
      case FoKind::Not: collect(f.lhs(), !positive); return;
      case FoKind::And:
        if (positive) {
          collect(f.lhs(), true);
          collect(f.rhs(), true);
        }
        return;
      case FoKind::Or:
        if (!positive) {
          collect(f.lhs(), false);
          collect(f.rhs(), false);
        }
        return;
      case FoKind::Implies:
        if (!positive) {
          collect(f.lhs(), true);
          collect(f.rhs(), false);
        }
        return;
      case FoKind::Exists:
        if (positive) collect(f.body(), true);
        return;
      case FoKind::Forall:
        if (!positive) collect(f.body(), false);
        return;
      default: return;
    }
  }

  // Tightest derivable bound on u - v.
  // Sets *inconsistent when the facts admit no assignment.
  std::optional<Diff> bound(const std::string& u, const std::string& v, bool* inconsistent = nullptr) const {
    std::map<std::string, Diff> best{{u, Diff{Rational(0), false}}};
    // Bellman-Ford over a small graph.
    for (std::size_t round = 0; round <= edges.size(); ++round) {
      bool changed = false;
      for (const auto& [a, b, d] : edges) {
        auto it = best.find(a);
        if (it == best.end()) continue;
        Diff cand{it->second.w + d.w, it->second.strict || d.strict};
        auto jt = best.find(b);
        if (jt == best.end() || tighter(cand, jt->second)) {
          if (b == u && tighter(cand, Diff{Rational(0), false})) {
            if (inconsistent) *inconsistent = true;
            return std::nullopt;
          }
          best[b] = cand;
          changed = true;
        }
      }
      if (!changed) break;
    }
    auto it = best.find(v);
    if (it == best.end() || u == v) return std::nullopt;
    return it->second;
  }
};

bool implied_range(const Facts& facts, const std::string& z, const Term& lo, const Term& hi) {
  // z - hi.var < hi.offset and lo.var - z <= -lo.offset
  bool vacuous = false;
  auto up = facts.bound(z, hi.var, &vacuous);
  auto down = facts.bound(lo.var, z, &vacuous);
  if (vacuous) return true;
  bool up_ok = up && (up->w < hi.offset || (up->w == hi.offset && up->strict));
  bool down_ok = down && down->w <= -lo.offset;
  return up_ok && down_ok;
}

Fo normalize_rec(const Fo& f, const Term& lo, const Term& hi, const Facts& ctx) {
  auto with = [&](const Fo& g, bool positive) {
    Facts c = ctx;
    c.collect(g, positive);
    return c;
  };
  switch (f.kind()) {
    case FoKind::Not: return fo::neg(normalize_rec(f.lhs(), lo, hi, ctx));
    case FoKind::And:
      return fo::conj(normalize_rec(f.lhs(), lo, hi, with(f.rhs(), true)),
                      normalize_rec(f.rhs(), lo, hi, with(f.lhs(), true)));
    case FoKind::Or:
      return fo::disj(normalize_rec(f.lhs(), lo, hi, with(f.rhs(), false)),
                      normalize_rec(f.rhs(), lo, hi, with(f.lhs(), false)));
    case FoKind::Implies:
      return fo::implies(normalize_rec(f.lhs(), lo, hi, with(f.rhs(), false)),
                         normalize_rec(f.rhs(), lo, hi, with(f.lhs(), true)));
    case FoKind::Exists:
    case FoKind::Forall: {
      bool ex = f.kind() == FoKind::Exists;
      const Fo& b = f.body();
      FoKind joint = ex ? FoKind::And : FoKind::Implies;
      Fo range = range_of(f.name(), lo, hi);
      if (b.kind() == joint && b.lhs() == range) {
        Fo chi = normalize_rec(b.rhs(), lo, hi, with(range, true));
        return ex ? fo::exists(f.name(), fo::conj(range, chi)) : fo::forall(f.name(), fo::implies(range, chi));
      }
      Facts facts = with(b, ex);
      Fo inner = normalize_rec(b, lo, hi, ctx);
      if (!implied_range(facts, f.name(), lo, hi)) return ex ? fo::exists(f.name(), inner) : fo::forall(f.name(), inner);
      return ex ? fo::exists(f.name(), fo::conj(range, inner)) : fo::forall(f.name(), fo::implies(range, inner));
    }
    default: return f;
  }
}

bool only_x_free(const Fo& f) {
  for (const auto& v : free_vars(f))
    if (v != "x") return false;
  return true;
}

}  // namespace

bool in_bet(const Fo& phi, const Term& lo, const Term& hi) {
  std::set<std::string> bound;
  return bet_rec(phi, lo, hi, bound);
}

namespace {

void bound_names(const Fo& f, std::set<std::string>& out) {
  if (!f.valid()) return;
  if (f.kind() == FoKind::Exists || f.kind() == FoKind::Forall) out.insert(f.name());
  bound_names(f.lhs(), out);
  bound_names(f.rhs(), out);
}

// P(t+k) with k != 0 becomes exists w (w = t+k & P(w)).
Fo unshift_preds(const Fo& f) {
  std::set<std::string> taken = free_vars(f);
  bound_names(f, taken);
  bool changed = false;
  Fo out = substitute_preds(f, [&](const std::string& p, const Term& t) -> std::optional<Fo> {
    if (t.offset.is_zero()) return std::nullopt;
    std::string w = fresh_name("w", taken);
    taken.insert(w);
    changed = true;
    return fo::exists(w, fo::conj(fo::eq(fo::var(w), t), fo::pred(p, fo::var(w))));
  });
  return changed ? out : f;
}

}  // namespace

Fo normalize_bet(const Fo& phi, const Term& lo, const Term& hi) {
  return normalize_rec(unshift_preds(alpha_normalize(phi)), lo, hi, Facts{});
}

bool is_unit(const Fo& phi) {
  Term lo = fo::var("x"), hi = fo::var("x", Rational(1));
  return only_x_free(phi) && in_bet(normalize_bet(phi, lo, hi), lo, hi);
}

bool is_n_bounded(const Fo& phi, std::int64_t n) {
  Term lo = fo::var("x", Rational(-n)), hi = fo::var("x", Rational(n));
  return n >= 1 && only_x_free(phi) && in_bet(normalize_bet(phi, lo, hi), lo, hi);
}

}  // namespace mtlkit
