#include "mtlkit/eval.hpp"

#include <algorithm>
#include <unordered_map>

namespace mtlkit {

namespace {

void check_props(const Signal& f, const Mtl& phi) {
  for (const auto& p : props_of(phi))
    if (!f.has_prop(p)) throw EvalError("unknown proposition '" + p + "'");
}

// ---------------------------------------------------------------------------
// Set path

// {r : exists t > r, t - r in I, t in S2, (r,t) subset of S1}
SatSet until_set(const SatSet& s1, const SatSet& s2, const Interval& iv) {
  std::vector<Interval> out;
  for (const Interval& j : s1.intervals()) {
    if (!(j.lo < j.hi)) continue;
    auto window = Interval::try_make(j.lo, false, j.hi, j.hi.is_finite());
    auto closure = Interval::try_make(j.lo, j.lo.is_finite(), j.hi, j.hi.is_finite());
    SatSet targets = s2.intersect(*window).minus(iv).intersect(*closure);
    for (const Interval& k : targets.intervals()) out.push_back(k);
  }
  return SatSet(std::move(out));
}

SatSet since_set(const SatSet& s1, const SatSet& s2, const Interval& iv) {
  std::vector<Interval> out;
  for (const Interval& j : s1.intervals()) {
    if (!(j.lo < j.hi)) continue;
    auto window = Interval::try_make(j.lo, j.lo.is_finite(), j.hi, false);
    auto closure = Interval::try_make(j.lo, j.lo.is_finite(), j.hi, j.hi.is_finite());
    SatSet targets = s2.intersect(*window).plus(iv).intersect(*closure);
    for (const Interval& k : targets.intervals()) out.push_back(k);
  }
  return SatSet(std::move(out));
}

class SetEvaluator {
 public:
  explicit SetEvaluator(const Signal& f) : f_(f) {}

  const SatSet& eval(const Mtl& phi) {
    auto it = memo_.find(phi.id());
    if (it != memo_.end()) return it->second;
    SatSet s = compute(phi);
    return memo_.emplace(phi.id(), std::move(s)).first->second;
  }

 private:
  SatSet compute(const Mtl& phi) {
    switch (phi.kind()) {
      case MtlKind::True: return SatSet::all();
      case MtlKind::Prop: return f_.prop_satset(phi.name());
      case MtlKind::Not: return eval(phi.arg()).complement();
      case MtlKind::And: return eval(phi.lhs()).intersect(eval(phi.rhs()));
      case MtlKind::Or: return eval(phi.lhs()).unite(eval(phi.rhs()));
      case MtlKind::Until: return until_set(eval(phi.lhs()), eval(phi.rhs()), phi.interval());
      case MtlKind::Since: return since_set(eval(phi.lhs()), eval(phi.rhs()), phi.interval());
      case MtlKind::EvF: return eval(phi.arg()).shifted(-phi.offset());
      case MtlKind::EvP: return eval(phi.arg()).shifted(phi.offset());
      case MtlKind::DiaF: return eval(phi.arg()).minus(phi.interval());
      case MtlKind::DiaP: return eval(phi.arg()).plus(phi.interval());
      case MtlKind::BoxF: return eval(phi.arg()).complement().minus(phi.interval()).complement();
      case MtlKind::BoxP: return eval(phi.arg()).complement().plus(phi.interval()).complement();
      case MtlKind::Kplus:
        return until_set(eval(phi.arg()).complement(), SatSet::all(), Interval::positive()).complement();
      case MtlKind::Kminus:
        return since_set(eval(phi.arg()).complement(), SatSet::all(), Interval::positive()).complement();
    }
    return {};
  }

  const Signal& f_;
  std::unordered_map<const Mtl::Node*, SatSet> memo_;
};

// ---------------------------------------------------------------------------
// Point path

using Points = std::vector<Rational>;

void normalize(Points& p) {
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
}

std::vector<Rational> finite_ends(const Interval& iv) {
  std::vector<Rational> e;
  if (iv.lo.is_finite()) e.push_back(iv.lo.value());
  if (iv.hi.is_finite()) e.push_back(iv.hi.value());
  return e;
}

}  // namespace

struct PointEvaluator::Impl {
  const Signal& f;
  Mtl root;
  std::unordered_map<const Mtl::Node*, Points> crit;
  std::unordered_map<const Mtl::Node*, std::unordered_map<Rational, bool>> memo;

  Impl(const Signal& s, Mtl phi) : f(s), root(std::move(phi)) {}

  // Superset of the points where the truth value of phi can change.
  const Points& breaks(const Mtl& phi) {
    auto it = crit.find(phi.id());
    if (it != crit.end()) return it->second;
    Points p;
    auto shift_all = [&p](const Points& src, const std::vector<Rational>& ds, int sign) {
      for (const Rational& b : src)
        for (const Rational& d : ds) p.push_back(sign > 0 ? b + d : b - d);
    };
    switch (phi.kind()) {
      case MtlKind::True: break;
      case MtlKind::Prop: p = f.breakpoints(); break;
      case MtlKind::Not:
      case MtlKind::Kplus:
      case MtlKind::Kminus: p = breaks(phi.arg()); break;
      case MtlKind::And:
      case MtlKind::Or: {
        p = breaks(phi.lhs());
        const Points& q = breaks(phi.rhs());
        p.insert(p.end(), q.begin(), q.end());
        break;
      }
      case MtlKind::Until:
      case MtlKind::Since: {
        Points both = breaks(phi.lhs());
        const Points& q = breaks(phi.rhs());
        both.insert(both.end(), q.begin(), q.end());
        p = breaks(phi.lhs());
        shift_all(both, finite_ends(phi.interval()), phi.kind() == MtlKind::Until ? -1 : 1);
        break;
      }
      case MtlKind::EvF: shift_all(breaks(phi.arg()), {phi.offset()}, -1); break;
      case MtlKind::EvP: shift_all(breaks(phi.arg()), {phi.offset()}, 1); break;
      case MtlKind::DiaF:
      case MtlKind::BoxF: shift_all(breaks(phi.arg()), finite_ends(phi.interval()), -1); break;
      case MtlKind::DiaP:
      case MtlKind::BoxP: shift_all(breaks(phi.arg()), finite_ends(phi.interval()), 1); break;
    }
    normalize(p);
    return crit.emplace(phi.id(), std::move(p)).first->second;
  }

  // A possibly negated operand; a null formula stands for true.
  struct Operand {
    const Mtl* phi;
    bool negated;
  };

  bool value(const Operand& o, const Rational& t) {
    bool v = o.phi ? holds(*o.phi, t) : true;
    return v != o.negated;
  }

  const Points& operand_breaks(const Operand& o) {
    static const Points none;
    return o.phi ? breaks(*o.phi) : none;
  }

  // exists d in I, d > 0: B at r + dir*d and A throughout the open stretch between.
  bool reach(const Operand& a, const Operand& b, const Interval& iv, int dir, const Rational& r) {
    auto to_dist = [&](const Points& src, Points& dst) {
      for (const Rational& t : src) {
        Rational d = dir > 0 ? t - r : r - t;
        if (d.sign() > 0) dst.push_back(d);
      }
    };
    auto at = [&](const Rational& d) { return dir > 0 ? r + d : r - d; };

    Points da;
    to_dist(operand_breaks(a), da);
    normalize(da);
    // A holds on (0, c) and fails arbitrarily close after c (c = limit when unset).
    std::optional<Rational> c;
    Rational prev(0);
    for (const Rational& d : da) {
      if (!value(a, at(midpoint(prev, d)))) {
        c = prev;
        break;
      }
      if (!value(a, at(d))) {
        c = d;
        break;
      }
      prev = d;
    }
    if (!c && !value(a, at(prev + Rational(1)))) c = prev;
    if (c && c->sign() == 0) return false;

    Points cand = da;
    to_dist(operand_breaks(b), cand);
    for (const Rational& e : finite_ends(iv))
      if (e.sign() > 0) cand.push_back(e);
    if (c) cand.push_back(*c);
    normalize(cand);
    if (c) cand.erase(std::upper_bound(cand.begin(), cand.end(), *c), cand.end());

    auto test = [&](const Rational& d) { return iv.contains(d) && value(b, at(d)); };
    Rational last(0);
    for (const Rational& d : cand) {
      if (test(midpoint(last, d)) || test(d)) return true;
      last = d;
    }
    if (!c && test(last + Rational(1))) return true;
    return false;
  }

  bool holds(const Mtl& phi, const Rational& r) {
    auto& m = memo[phi.id()];
    auto it = m.find(r);
    if (it != m.end()) return it->second;
    bool v = compute(phi, r);
    memo[phi.id()].emplace(r, v);
    return v;
  }

  bool compute(const Mtl& phi, const Rational& r) {
    switch (phi.kind()) {
      case MtlKind::True: return true;
      case MtlKind::Prop: return f.holds(phi.name(), r);
      case MtlKind::Not: return !holds(phi.arg(), r);
      case MtlKind::And: return holds(phi.lhs(), r) && holds(phi.rhs(), r);
      case MtlKind::Or: return holds(phi.lhs(), r) || holds(phi.rhs(), r);
      case MtlKind::Until:
        return reach({&phi.lhs(), false}, {&phi.rhs(), false}, phi.interval(), 1, r);
      case MtlKind::Since:
        return reach({&phi.lhs(), false}, {&phi.rhs(), false}, phi.interval(), -1, r);
      case MtlKind::EvF: return holds(phi.arg(), r + phi.offset());
      case MtlKind::EvP: return holds(phi.arg(), r - phi.offset());
      case MtlKind::DiaF: return reach({nullptr, false}, {&phi.arg(), false}, phi.interval(), 1, r);
      case MtlKind::DiaP: return reach({nullptr, false}, {&phi.arg(), false}, phi.interval(), -1, r);
      case MtlKind::BoxF: return !reach({nullptr, false}, {&phi.arg(), true}, phi.interval(), 1, r);
      case MtlKind::BoxP: return !reach({nullptr, false}, {&phi.arg(), true}, phi.interval(), -1, r);
      case MtlKind::Kplus:
        return !reach({&phi.arg(), true}, {nullptr, false}, Interval::positive(), 1, r);
      case MtlKind::Kminus:
        return !reach({&phi.arg(), true}, {nullptr, false}, Interval::positive(), -1, r);
    }
    return false;
  }
};

PointEvaluator::PointEvaluator(const Signal& f, Mtl phi) : impl_(std::make_unique<Impl>(f, std::move(phi))) {
  check_props(f, impl_->root);
}
PointEvaluator::~PointEvaluator() = default;
bool PointEvaluator::holds(const Rational& r) { return impl_->holds(impl_->root, r); }

SatSet mtl_satset(const Signal& f, const Mtl& phi) {
  check_props(f, phi);
  SetEvaluator ev(f);
  return ev.eval(phi);
}

bool mtl_holds(const Signal& f, const Rational& r, const Mtl& phi) { return PointEvaluator(f, phi).holds(r); }

// ---------------------------------------------------------------------------
// First-order evaluation

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<Rational>& v) const noexcept {
    std::size_t h = v.size();
    for (const Rational& q : v) h = h * 1000003u ^ q.hash();
    return h;
  }
};

// Lower/upper limits on a quantified variable derived from its guard atoms.
struct Range {
  Bound lo = Bound::neg_inf(), hi = Bound::pos_inf();
  bool lo_closed = false, hi_closed = false;
  std::optional<Rational> exact;

  void lower(const Rational& v, bool closed) {
    if (Bound(v) > lo || (Bound(v) == lo && !closed)) {
      lo = v;
      lo_closed = closed;
    }
  }
  void upper(const Rational& v, bool closed) {
    if (Bound(v) < hi || (Bound(v) == hi && !closed)) {
      hi = v;
      hi_closed = closed;
    }
  }
  bool admits(const Rational& t) const {
    if (lo.is_finite() && (t < lo.value() || (t == lo.value() && !lo_closed))) return false;
    if (hi.is_finite() && (t > hi.value() || (t == hi.value() && !hi_closed))) return false;
    return true;
  }
  bool in_closure(const Rational& t) const {
    if (lo.is_finite() && t < lo.value()) return false;
    if (hi.is_finite() && t > hi.value()) return false;
    return true;
  }
};

// Offsets at which the truth of a formula can break in one variable y, relative
// to each outer variable and to the signal breakpoints. An atom u+c ~ v+d is an
// edge u -> v of weight d-c, a predicate atom P(u+c) an edge u -> breakpoints of
// weight -c; a breakpoint of the y-profile is a path from y through bound
// variables of the subformula ending at an outer variable or at a breakpoint.
struct Profile {
  std::map<std::string, Points> outer;
  Points breaks;
};

const std::string kSignal = "\x01signal";

void collect_edges(const Fo& phi, std::multimap<std::string, std::pair<std::string, Rational>>& edges,
                   std::set<std::string>& bound) {
  switch (phi.kind()) {
    case FoKind::Pred: edges.emplace(phi.t1().var, std::make_pair(kSignal, -phi.t1().offset)); return;
    case FoKind::Less:
    case FoKind::Eq: {
      const Term& a = phi.t1();
      const Term& b = phi.t2();
      if (a.var == b.var) return;
      edges.emplace(a.var, std::make_pair(b.var, b.offset - a.offset));
      edges.emplace(b.var, std::make_pair(a.var, a.offset - b.offset));
      return;
    }
    case FoKind::Exists:
    case FoKind::Forall:
      bound.insert(phi.name());
      collect_edges(phi.body(), edges, bound);
      return;
    case FoKind::Not: collect_edges(phi.lhs(), edges, bound); return;
    case FoKind::And:
    case FoKind::Or:
    case FoKind::Implies:
      collect_edges(phi.lhs(), edges, bound);
      collect_edges(phi.rhs(), edges, bound);
      return;
    case FoKind::True: return;
  }
}

Profile make_profile(const Fo& body, const std::string& y, int steps) {
  std::multimap<std::string, std::pair<std::string, Rational>> edges;
  std::set<std::string> bound;
  collect_edges(body, edges, bound);
  bound.insert(y);
  Profile prof;
  std::set<std::pair<std::string, Rational>> seen{{y, Rational(0)}};
  std::vector<std::pair<std::string, Rational>> frontier{{y, Rational(0)}};
  for (int i = 0; i < steps && !frontier.empty(); ++i) {
    std::vector<std::pair<std::string, Rational>> next;
    for (const auto& [v, s] : frontier) {
      auto [lo, hi] = edges.equal_range(v);
      for (auto it = lo; it != hi; ++it) {
        const auto& [w, d] = it->second;
        Rational t = s + d;
        if (w == kSignal) prof.breaks.push_back(t);
        else if (!bound.count(w)) prof.outer[w].push_back(t);
        else if (seen.emplace(w, t).second) next.emplace_back(w, t);
      }
    }
    frontier = std::move(next);
  }
  normalize(prof.breaks);
  for (auto& [w, pts] : prof.outer) normalize(pts);
  return prof;
}

int quantifier_count(const Fo& phi) {
  switch (phi.kind()) {
    case FoKind::Exists:
    case FoKind::Forall: return 1 + quantifier_count(phi.body());
    case FoKind::Not: return quantifier_count(phi.lhs());
    case FoKind::And:
    case FoKind::Or:
    case FoKind::Implies: return quantifier_count(phi.lhs()) + quantifier_count(phi.rhs());
    default: return 0;
  }
}

class FoEvaluator {
 public:
  FoEvaluator(const Signal& f, const Fo& root, int extra) : f_(f), extra_(extra) {
    for (const auto& p : preds_of(root))
      if (!f.has_prop(p)) throw EvalError("unknown predicate '" + p + "'");
  }

  bool eval(const Fo& phi, Env& env) {
    switch (phi.kind()) {
      case FoKind::True: return true;
      case FoKind::Pred: return f_.holds(phi.name(), value(phi.t1(), env));
      case FoKind::Less: return value(phi.t1(), env) < value(phi.t2(), env);
      case FoKind::Eq: return value(phi.t1(), env) == value(phi.t2(), env);
      case FoKind::And: return eval(phi.lhs(), env) && eval(phi.rhs(), env);
      case FoKind::Or: return eval(phi.lhs(), env) || eval(phi.rhs(), env);
      case FoKind::Not: return !eval(phi.lhs(), env);
      case FoKind::Implies: return !eval(phi.lhs(), env) || eval(phi.rhs(), env);
      case FoKind::Exists:
      case FoKind::Forall: return quantifier(phi, env);
    }
    return false;
  }

  // Points where the y-profile may break, clipped to the range (range endpoints included).
  Points grid(const Profile& prof, const Env& env, const Range& range) {
    Points pts;
    auto push = [&](const Rational& t) {
      if (range.in_closure(t)) pts.push_back(t);
    };
    for (const auto& [w, offs] : prof.outer) {
      Rational base = value(fo::var(w), env);
      for (const Rational& d : offs) push(base + d);
    }
    for (const Rational& b : f_.breakpoints())
      for (const Rational& d : prof.breaks) push(b + d);
    if (range.lo.is_finite()) pts.push_back(range.lo.value());
    if (range.hi.is_finite()) pts.push_back(range.hi.value());
    normalize(pts);
    return pts;
  }

  // One representative per cell of the grid.
  Points candidates(const Profile& prof, const Env& env, const Range& range) {
    if (range.exact) return {*range.exact};
    Points pts = grid(prof, env, range);
    if (pts.empty()) return {Rational(0)};
    Points out;
    if (range.lo.is_neg_inf()) out.push_back(pts.front() - Rational(1));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i > 0) out.push_back(midpoint(pts[i - 1], pts[i]));
      if (range.admits(pts[i])) out.push_back(pts[i]);
    }
    if (range.hi.is_pos_inf()) out.push_back(pts.back() + Rational(1));
    return out;
  }

  Profile free_profile(const Fo& phi, const std::string& x) {
    return make_profile(phi, x, quantifier_count(phi) + 1 + extra_);
  }

  Rational value(const Term& t, const Env& env) {
    auto it = env.find(t.var);
    if (it == env.end()) throw EvalError("unbound variable '" + t.var + "'");
    return it->second + t.offset;
  }

 private:
  const std::vector<std::string>& free_list(const Fo& phi) {
    auto it = free_.find(phi.id());
    if (it != free_.end()) return it->second;
    auto fv = free_vars(phi);
    return free_.emplace(phi.id(), std::vector<std::string>(fv.begin(), fv.end())).first->second;
  }

  const Profile& profile(const Fo& q) {
    auto it = profiles_.find(q.id());
    if (it != profiles_.end()) return it->second;
    Profile p = make_profile(q.body(), q.name(), quantifier_count(q) + extra_);
    return profiles_.emplace(q.id(), std::move(p)).first->second;
  }

  // Walks the conjuncts of phi under the given polarity and narrows the range of v.
  void guards(const Fo& phi, bool positive, const std::string& v, const Env& env, Range& r) {
    switch (phi.kind()) {
      case FoKind::And:
        if (positive) {
          guards(phi.lhs(), true, v, env, r);
          guards(phi.rhs(), true, v, env, r);
        }
        return;
      case FoKind::Or:
        if (!positive) {
          guards(phi.lhs(), false, v, env, r);
          guards(phi.rhs(), false, v, env, r);
        }
        return;
      case FoKind::Implies:
        if (!positive) {
          guards(phi.lhs(), true, v, env, r);
          guards(phi.rhs(), false, v, env, r);
        }
        return;
      case FoKind::Not: guards(phi.lhs(), !positive, v, env, r); return;
      case FoKind::Less:
      case FoKind::Eq: break;
      default: return;
    }
    const Term& a = phi.t1();
    const Term& b = phi.t2();
    bool va = a.var == v, vb = b.var == v;
    if (va == vb) return;
    const Term& other = va ? b : a;
    auto it = env.find(other.var);
    if (it == env.end()) return;
    Rational lim = it->second + other.offset - (va ? a.offset : b.offset);
    if (phi.kind() == FoKind::Eq) {
      if (positive) r.exact = lim;
      return;
    }
    // v on the left of '<': v < lim, negated v >= lim; on the right: v > lim, negated v <= lim.
    if (va) {
      if (positive) r.upper(lim, false);
      else r.lower(lim, true);
    } else {
      if (positive) r.lower(lim, false);
      else r.upper(lim, true);
    }
  }

  bool quantifier(const Fo& phi, Env& env) {
    const auto& fv = free_list(phi);
    std::vector<Rational> key;
    key.reserve(fv.size());
    for (const auto& v : fv) key.push_back(value(fo::var(v), env));
    auto& table = memo_[phi.id()];
    auto it = table.find(key);
    if (it != table.end()) return it->second;

    bool is_exists = phi.kind() == FoKind::Exists;
    const std::string& y = phi.name();
    Range range;
    guards(phi.body(), is_exists, y, env, range);

    std::optional<Rational> saved;
    if (auto e = env.find(y); e != env.end()) saved = e->second;
    bool result = !is_exists;
    for (const Rational& t : candidates(profile(phi), env, range)) {
      env[y] = t;
      if (eval(phi.body(), env) == is_exists) {
        result = is_exists;
        break;
      }
    }
    if (saved) env[y] = *saved;
    else env.erase(y);
    memo_[phi.id()].emplace(std::move(key), result);
    return result;
  }

  const Signal& f_;
  int extra_;
  std::unordered_map<const Fo::Node*, Profile> profiles_;
  std::unordered_map<const Fo::Node*, std::vector<std::string>> free_;
  std::unordered_map<const Fo::Node*, std::unordered_map<std::vector<Rational>, bool, VecHash>> memo_;
};

}  // namespace

bool fo_eval(const Signal& f, const Fo& phi, const Env& env) {
  Fo g = alpha_normalize(phi);
  FoEvaluator ev(f, g, 0);
  Env e = env;
  return ev.eval(g, e);
}

SatSet fo_truth_set(const Signal& f, const Fo& phi) { return fo_truth_set(f, phi, 0); }

SatSet fo_truth_set(const Signal& f, const Fo& phi, int extra_depth) {
  auto fv = free_vars(phi);
  if (fv.size() > 1) throw EvalError("fo_truth_set expects at most one free variable");
  std::string x = fv.empty() ? std::string("x") : *fv.begin();
  Fo g = alpha_normalize(phi);
  FoEvaluator ev(f, g, extra_depth);
  Env env;
  Points pts = ev.grid(ev.free_profile(g, x), env, Range{});
  auto truth = [&](const Rational& t) {
    env[x] = t;
    return ev.eval(g, env);
  };
  if (pts.empty()) return truth(Rational(0)) ? SatSet::all() : SatSet::empty();
  std::vector<Interval> parts;
  if (truth(pts.front() - Rational(1))) parts.push_back(Interval::open(Bound::neg_inf(), pts.front()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (truth(pts[i])) parts.push_back(Interval::point(pts[i]));
    Bound next = i + 1 < pts.size() ? Bound(pts[i + 1]) : Bound::pos_inf();
    Rational probe = i + 1 < pts.size() ? midpoint(pts[i], pts[i + 1]) : pts[i] + Rational(1);
    if (truth(probe)) parts.push_back(Interval::open(pts[i], next));
  }
  return SatSet(std::move(parts));
}

}  // namespace mtlkit
