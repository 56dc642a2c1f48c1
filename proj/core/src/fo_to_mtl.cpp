#include <map>
#include <numeric>
#include <optional>

#include "transform_internal.hpp"

namespace mtlkit {

namespace {

using namespace detail;

enum class Rel { Lt, Eq, Gt };  // x < z+d, x = z+d, z+d < x

struct Positional {
  Rel rel;
  Rational d;
};

bool is_x(const Term& t) { return t.var == "x"; }

std::int64_t lcm_of_denominators(const Fo& f) {
  std::int64_t l = 1;
  for (const auto& q : offsets_of(f)) l = std::lcm(l, q.denominator_i64());
  return l;
}

Mtl substitute_props(const Mtl& f, const std::map<std::string, Mtl>& sub) {
  if (f.kind() == MtlKind::Prop) {
    auto it = sub.find(f.name());
    return it == sub.end() ? f : it->second;
  }
  if (!f.lhs().valid()) return f;
  Mtl a = substitute_props(f.lhs(), sub);
  Mtl b = f.rhs().valid() ? substitute_props(f.rhs(), sub) : Mtl{};
  return mtl::rebuild(f, a, b);
}

// Constant folding after propositions were replaced by true / false.
Mtl fold(const Mtl& f) {
  switch (f.kind()) {
    case MtlKind::True:
    case MtlKind::Prop: return f;
    case MtlKind::Not: return sneg(fold(f.arg()));
    case MtlKind::And: return sconj(fold(f.lhs()), fold(f.rhs()));
    case MtlKind::Or: return sdisj(fold(f.lhs()), fold(f.rhs()));
    case MtlKind::Until:
    case MtlKind::Since: {
      Mtl a = fold(f.lhs()), b = fold(f.rhs());
      if (is_false(b)) return mtl::ff();
      return mtl::rebuild(f, a, b);
    }
    default: {
      Mtl a = fold(f.arg());
      bool box = f.kind() == MtlKind::BoxF || f.kind() == MtlKind::BoxP;
      if (is_true(a) && (box || f.kind() == MtlKind::EvF || f.kind() == MtlKind::EvP || f.kind() == MtlKind::Kplus ||
                         f.kind() == MtlKind::Kminus))
        return a;
      if (is_false(a) && !box) return a;
      return mtl::rebuild(f, a);
    }
  }
}

Mtl shifted_prop(const std::string& p, const Rational& k) {
  Mtl a = mtl::prop(p);
  if (k.is_zero()) return a;
  return k.sign() > 0 ? mtl::ev_f(k, a) : mtl::ev_p(-k, a);
}

// Quantifier depth induction; one level of positional propositions per quantifier.
class Translator {
 public:
  explicit Translator(std::size_t budget) : budget_(budget), steps_("fo_to_mtl", budget) {}

  Mtl translate(const Fo& f) {
    if (quantifier_depth(f) > 0)
      if (auto m = try_bounded(f)) return *m;
    switch (f.kind()) {
      case FoKind::True: return mtl::tt();
      case FoKind::Not: return sneg(translate(f.lhs()));
      case FoKind::And: return sconj(translate(f.lhs()), translate(f.rhs()));
      case FoKind::Or: return sdisj(translate(f.lhs()), translate(f.rhs()));
      case FoKind::Implies: return sdisj(sneg(translate(f.lhs())), translate(f.rhs()));
      case FoKind::Pred: return shifted_prop(f.name(), f.t1().offset);
      case FoKind::Less:
      case FoKind::Eq: {
        Fo s = simplify(f);
        if (s.kind() == FoKind::True) return mtl::tt();
        if (s.kind() == FoKind::Not && s.lhs().kind() == FoKind::True) return mtl::ff();
        throw TransformError("fo_to_mtl: undecided atom " + print_fo(f));
      }
      case FoKind::Exists: return exists(f.name(), f.body());
      case FoKind::Forall: return sneg(exists(f.name(), fo::neg(f.body())));
    }
    throw std::logic_error("unreachable");
  }

 private:
  std::optional<Mtl> try_bounded(const Fo& f) {
    Rational span(0);
    for (const auto& q : offsets_of(f)) span += q.abs();
    std::int64_t hi = std::max<std::int64_t>(1, span.floor().numerator_i64() + 1);
    for (std::int64_t n = 1; n <= std::min<std::int64_t>(hi, 4); ++n)
      if (is_n_bounded(f, n)) return bounded_fo_to_mtl(f, n);
    return std::nullopt;
  }

  // exists y. psi(x, y)
  Mtl exists(const std::string& y, const Fo& psi) {
    steps_.step();
    std::vector<std::pair<std::string, Rational>> xs;  // P(x+k) atoms
    collect_x_preds(psi, xs);
    if (xs.size() > 12) throw BudgetExceeded("fo_to_mtl", budget_);
    const int level = next_level_++;
    std::map<std::string, Positional> pos;
    Fo body = positional(psi, level, pos);
    Rational margin(0);
    for (const auto& [_, p] : pos) margin = std::max(margin, p.d.abs());
    margin = margin.floor() + (margin.is_integer() ? Rational(0) : Rational(1));

    std::map<Fo, Mtl, FoLess> memo;
    Mtl out = mtl::ff();
    for (std::size_t g = 0; g < (std::size_t{1} << xs.size()); ++g) {
      steps_.step();
      Mtl theta = mtl::tt();
      std::map<std::pair<std::string, Rational>, bool> value;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        bool v = (g >> i) & 1;
        value[xs[i]] = v;
        Mtl a = shifted_prop(xs[i].first, xs[i].second);
        theta = sconj(theta, v ? a : sneg(a));
      }
      Fo fixed = simplify(substitute_preds(body, [&](const std::string& p, const Term& t) -> std::optional<Fo> {
        if (!is_x(t)) return std::nullopt;
        return value.at({p, t.offset}) ? fo::tt() : fo::ff();
      }));
      auto it = memo.find(fixed);
      if (it == memo.end()) it = memo.emplace(fixed, level_formula(y, fixed, pos, margin)).first;
      out = sdisj(out, sconj(theta, it->second));
    }
    return out;
  }

  struct FoLess {
    bool operator()(const Fo& a, const Fo& b) const {
      if (a.hash() != b.hash()) return a.hash() < b.hash();
      if (a == b) return false;
      return print_fo(a) < print_fo(b);
    }
  };

  Mtl level_formula(const std::string& y, const Fo& fixed, const std::map<std::string, Positional>& pos,
                    const Rational& margin) {
    Mtl inner = translate(subst_term(fixed, y, fo::var("x")));
    Mtl around = sdisj_all({mtl::dia_p(inner), inner, mtl::dia_f(inner)});
    SeparatedForm s;
    try {
      s = separate_with_margin(around, budget_, margin);
    } catch (const BudgetExceeded& e) {
      throw BudgetExceeded("fo_to_mtl/" + e.stage(), budget_);
    }
    return resolve(s, pos);
  }

  Mtl resolve(const SeparatedForm& s, const std::map<std::string, Positional>& pos) {
    using Kind = SeparatedForm::Kind;
    switch (s.kind) {
      case Kind::DistantFuture:
      case Kind::DistantPast: {
        const bool future = s.kind == Kind::DistantFuture;
        std::map<std::string, Mtl> sub;
        for (const auto& [name, p] : pos)
          sub[name] = (p.rel == Rel::Lt && future) || (p.rel == Rel::Gt && !future) ? mtl::tt() : mtl::ff();
        Mtl body = fold(substitute_props(s.body, sub));
        return future ? mtl::ev_f(s.n, body) : mtl::ev_p(s.n, body);
      }
      case Kind::Bounded: return bounded_leaf(s.body, pos);
      case Kind::Not: return sneg(resolve(s.children.at(0), pos));
      case Kind::And: {
        Mtl out = mtl::tt();
        for (const auto& c : s.children) out = sconj(out, resolve(c, pos));
        return out;
      }
      case Kind::Or: {
        Mtl out = mtl::ff();
        for (const auto& c : s.children) out = sdisj(out, resolve(c, pos));
        return out;
      }
    }
    throw std::logic_error("unreachable");
  }

  Mtl bounded_leaf(const Mtl& theta, const std::map<std::string, Positional>& pos) {
    bool mentions = false;
    for (const auto& p : props_of(theta))
      if (pos.count(p)) mentions = true;
    if (!mentions) return theta;
    Fo t = substitute_preds(mtl_to_fo(theta), [&](const std::string& name, const Term& z) -> std::optional<Fo> {
      auto it = pos.find(name);
      if (it == pos.end()) return std::nullopt;
      Term at = z.plus(it->second.d);
      switch (it->second.rel) {
        case Rel::Lt: return fo::less(fo::var("x"), at);
        case Rel::Eq: return fo::eq(fo::var("x"), at);
        case Rel::Gt: return fo::less(at, fo::var("x"));
      }
      return std::nullopt;
    });
    t = simplify(t);
    if (quantifier_depth(t) == 0) return translate(t);
    const std::int64_t l = lcm_of_denominators(t);
    Fo scaled = l == 1 ? t : scale_fo(t, Rational(l));
    Bound reach = std::max(future_reach(theta), past_reach(theta));
    std::int64_t n0 = reach.is_finite() ? (reach.value() * Rational(l)).floor().numerator_i64() + 1 : 1;
    for (std::int64_t n = std::max<std::int64_t>(n0, 1); n <= n0 + 2; ++n)
      if (is_n_bounded(scaled, n)) {
        Mtl m = bounded_fo_to_mtl(scaled, n);
        return l == 1 ? m : scale_mtl(m, Rational(1, l));
      }
    throw TransformError("fo_to_mtl: bounded part is not recognized as N-bounded: " + print_fo(t));
  }

  static void collect_x_preds(const Fo& f, std::vector<std::pair<std::string, Rational>>& out) {
    if (!f.valid()) return;
    if (f.kind() == FoKind::Pred && is_x(f.t1())) {
      std::pair<std::string, Rational> k{f.name(), f.t1().offset};
      for (const auto& e : out)
        if (e == k) return;
      out.push_back(std::move(k));
      return;
    }
    collect_x_preds(f.lhs(), out);
    collect_x_preds(f.rhs(), out);
  }

  static std::string prop_name(int level, Rel r, const Rational& d) {
    static const char* tag[] = {"lt", "eq", "gt"};
    return "#" + std::to_string(level) + tag[static_cast<int>(r)] + d.str();
  }

  // Replaces comparisons between x and another variable by positional predicates on that variable.
  static Fo positional(const Fo& f, int level, std::map<std::string, Positional>& pos) {
    using namespace fo;
    auto make = [&](Rel r, const Term& z, const Rational& d) {
      std::string name = prop_name(level, r, d);
      pos.emplace(name, Positional{r, d});
      return pred(name, var(z.var));
    };
    switch (f.kind()) {
      case FoKind::Less: {
        const Term &a = f.t1(), &b = f.t2();
        if (is_x(a) && !is_x(b)) return make(Rel::Lt, b, b.offset - a.offset);
        if (!is_x(a) && is_x(b)) return make(Rel::Gt, a, a.offset - b.offset);
        return f;
      }
      case FoKind::Eq: {
        const Term &a = f.t1(), &b = f.t2();
        if (is_x(a) && !is_x(b)) return make(Rel::Eq, b, b.offset - a.offset);
        if (!is_x(a) && is_x(b)) return make(Rel::Eq, a, a.offset - b.offset);
        return f;
      }
      case FoKind::Not: return neg(positional(f.lhs(), level, pos));
      case FoKind::And: return conj(positional(f.lhs(), level, pos), positional(f.rhs(), level, pos));
      case FoKind::Or: return disj(positional(f.lhs(), level, pos), positional(f.rhs(), level, pos));
      case FoKind::Implies: return implies(positional(f.lhs(), level, pos), positional(f.rhs(), level, pos));
      case FoKind::Exists: return fo::exists(f.name(), positional(f.body(), level, pos));
      case FoKind::Forall: return forall(f.name(), positional(f.body(), level, pos));
      default: return f;
    }
  }

  std::size_t budget_;
  Budget steps_;
  int next_level_ = 0;
};

void require_one_free(const Fo& phi) {
  for (const auto& v : free_vars(phi))
    if (v != "x") throw TransformError("fo_to_mtl: free variable other than x: " + v);
}

}  // namespace

Mtl fo_to_mtl(const Fo& phi, std::size_t budget) {
  require_one_free(phi);
  for (const auto& q : offsets_of(phi))
    if (!q.is_integer()) throw TransformError("fo_to_mtl: non-integral constant " + q.str() + " (use fo_to_mtl_q)");
  return Translator(budget).translate(alpha_normalize(phi));
}

Mtl fo_to_mtl_q(const Fo& phi, std::size_t budget) {
  require_one_free(phi);
  const std::int64_t l = lcm_of_denominators(phi);
  if (l == 1) return fo_to_mtl(phi, budget);
  return scale_mtl(fo_to_mtl(scale_fo(phi, Rational(l)), budget), Rational(1, l));
}

}  // namespace mtlkit
