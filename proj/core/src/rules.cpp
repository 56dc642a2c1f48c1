#include "mtlkit/rules.hpp"

#include <map>
#include <stdexcept>

#include "mtlkit/random.hpp"
#include "transform_internal.hpp"

namespace mtlkit {

namespace {

using namespace mtl;
using R = RuleInstance;

Interval lt(const Rational& q) { return below(q); }
Interval le(const Rational& q) { return below_eq(q); }

Mtl U(const Mtl& a, const Mtl& b) { return until(a, b); }
Mtl U(const Mtl& a, const Mtl& b, const Interval& i) { return until(a, b, i); }
Mtl S(const Mtl& a, const Mtl& b) { return since(a, b); }
Mtl S(const Mtl& a, const Mtl& b, const Interval& i) { return since(a, b, i); }
Mtl G(const Mtl& a) { return box_f(a); }
Mtl G(const Interval& i, const Mtl& a) { return box_f(i, a); }
Mtl H(const Mtl& a) { return box_p(a); }
Mtl H(const Interval& i, const Mtl& a) { return box_p(i, a); }
Mtl Fd(const Interval& i, const Mtl& a) { return dia_f(i, a); }
Mtl Fe(const Rational& q, const Mtl& a) { return ev_f(q, a); }
Mtl Pe(const Rational& q, const Mtl& a) { return ev_p(q, a); }
Mtl n(const Mtl& a) { return neg(a); }
Mtl c(const Mtl& a, const Mtl& b) { return conj(a, b); }
Mtl d(const Mtl& a, const Mtl& b) { return disj(a, b); }
Mtl call(std::initializer_list<Mtl> xs) { return conj_all(xs); }
Mtl dall(std::initializer_list<Mtl> xs) { return disj_all(xs); }
Mtl T() { return tt(); }
Interval open_iv(const Rational& a, const Rational& b) { return Interval::open(a, b); }

std::vector<Rule> base_rules() {
  std::vector<Rule> rs;
  auto add = [&](std::string name, std::string family, bool displayed, std::function<Mtl(const R&)> l,
                 std::function<Mtl(const R&)> r) {
    rs.push_back(Rule{std::move(name), std::move(family), displayed, std::move(l), std::move(r)});
  };

  // Derived operators.
  add("def.diamond", "definition", true, [](const R& x) { return Fd(lt(x.q), x.phi); },
      [](const R& x) { return U(T(), x.phi, lt(x.q)); });
  add("def.box", "definition", true, [](const R& x) { return G(lt(x.q), x.phi); },
      [](const R& x) { return n(Fd(lt(x.q), n(x.phi))); });
  add("def.kplus", "definition", true, [](const R& x) { return kplus(x.phi); },
      [](const R& x) { return n(U(n(x.phi), T())); });
  add("def.kplus.bounded", "definition", true, [](const R& x) { return kplus(x.phi); },
      [](const R& x) { return n(U(n(x.phi), T(), lt(Rational(1)))); });
  add("def.punctual", "definition", true, [](const R& x) { return Fe(x.q, x.phi); },
      [](const R& x) { return U(T(), x.phi, Interval::point(x.q)); });

  // Normal form.
  add("nf.interval.open", "normal-form", true, [](const R& x) { return U(x.phi, x.psi, open_iv(x.q, x.q + x.q2)); },
      [](const R& x) { return c(G(lt(x.q), x.phi), Fe(x.q, c(x.phi, U(x.phi, x.psi, lt(x.q2))))); });
  add("nf.interval.closed-left", "normal-form", true,
      [](const R& x) { return U(x.phi, x.psi, Interval::make(x.q, true, x.q + x.q2, false)); },
      [](const R& x) { return c(G(lt(x.q), x.phi), Fe(x.q, d(x.psi, c(x.phi, U(x.phi, x.psi, lt(x.q2)))))); });
  add("nf.interval.closed-right", "normal-form", true,
      [](const R& x) { return U(x.phi, x.psi, Interval::make(x.q, false, x.q + x.q2, true)); },
      [](const R& x) { return c(G(lt(x.q), x.phi), Fe(x.q, c(x.phi, U(x.phi, x.psi, le(x.q2))))); });
  add("nf.interval.unbounded", "normal-form", true,
      [](const R& x) { return U(x.phi, x.psi, Interval::make(x.q, false, Bound::pos_inf(), false)); },
      [](const R& x) { return c(G(lt(x.q), x.phi), Fe(x.q, c(x.phi, U(x.phi, x.psi)))); });
  add("nf.interval.point", "normal-form", true, [](const R& x) { return U(x.phi, x.psi, Interval::point(x.q)); },
      [](const R& x) { return c(G(lt(x.q), x.phi), Fe(x.q, x.psi)); });
  add("nf.box.open", "normal-form", true, [](const R& x) { return G(open_iv(x.q, x.q + x.q2), x.phi); },
      [](const R& x) { return Fe(x.q, G(lt(x.q2), x.phi)); });
  add("nf.box.closed-left", "normal-form", true,
      [](const R& x) { return G(Interval::make(x.q, true, x.q + x.q2, false), x.phi); },
      [](const R& x) { return Fe(x.q, c(x.phi, G(lt(x.q2), x.phi))); });
  add("nf.split.target", "normal-form", true, [](const R& x) { return U(x.phi, d(x.psi, x.theta), lt(x.q)); },
      [](const R& x) { return d(U(x.phi, x.psi, lt(x.q)), U(x.phi, x.theta, lt(x.q))); });
  add("nf.split.invariant", "normal-form", true, [](const R& x) { return U(c(x.phi, x.psi), x.theta); },
      [](const R& x) { return c(U(x.phi, x.theta), U(x.psi, x.theta)); });
  add("nf.shift.and", "normal-form", true, [](const R& x) { return Fe(x.q, c(x.phi, x.psi)); },
      [](const R& x) { return c(Fe(x.q, x.phi), Fe(x.q, x.psi)); });
  add("nf.shift.or", "normal-form", true, [](const R& x) { return Fe(x.q, d(x.phi, x.psi)); },
      [](const R& x) { return d(Fe(x.q, x.phi), Fe(x.q, x.psi)); });
  add("nf.shift.not", "normal-form", true, [](const R& x) { return Fe(x.q, n(x.phi)); },
      [](const R& x) { return n(Fe(x.q, x.phi)); });
  add("nf.shift.until", "normal-form", true, [](const R& x) { return Fe(x.q, U(x.phi, x.psi, lt(x.q2))); },
      [](const R& x) { return U(Fe(x.q, x.phi), Fe(x.q, x.psi), lt(x.q2)); });
  add("nf.shift.since", "normal-form", true, [](const R& x) { return Fe(x.q, S(x.phi, x.psi)); },
      [](const R& x) { return S(Fe(x.q, x.phi), Fe(x.q, x.psi)); });
  add("nf.shift.box", "normal-form", true, [](const R& x) { return Fe(x.q, G(x.phi)); },
      [](const R& x) { return G(Fe(x.q, x.phi)); });
  add("nf.shift.cancel", "normal-form", true, [](const R& x) { return Fe(x.q, Pe(x.q, x.phi)); },
      [](const R& x) { return x.phi; });
  add("nf.neg.until", "normal-form", true, [](const R& x) { return n(U(x.phi, x.psi)); },
      [](const R& x) {
        Mtl k = kplus(n(x.phi));
        return dall({G(n(x.psi)), k, U(n(x.psi), c(n(x.psi), d(n(x.phi), k)))});
      });
  add("nf.neg.box", "normal-form", true, [](const R& x) { return n(G(x.phi)); },
      [](const R& x) { return U(T(), n(x.phi)); });

  // Extraction of unbounded operators from bounded ones; the bound is (0,q).
  add("extract.i", "extract", true, [](const R& x) { return U(x.theta, c(U(x.phi, x.psi), x.chi), lt(x.q)); },
      [](const R& x) {
        Interval b = lt(x.q);
        return d(U(x.theta, c(U(x.phi, x.psi, b), x.chi), b),
                 c(U(x.theta, c(G(b, x.phi), x.chi), b), Fe(x.q, U(x.phi, x.psi))));
      });
  add("extract.ii", "extract", true, [](const R& x) { return U(x.theta, c(G(x.phi), x.chi), lt(x.q)); },
      [](const R& x) {
        Interval b = lt(x.q);
        return c(U(x.theta, c(G(b, x.phi), x.chi), b), Fe(x.q, G(x.phi)));
      });
  add("extract.iii", "extract", true, [](const R& x) { return U(x.theta, c(S(x.phi, x.psi), x.chi), lt(x.q)); },
      [](const R& x) {
        Interval b = lt(x.q);
        return d(U(x.theta, c(S(x.phi, x.psi, b), x.chi), b),
                 c(U(x.theta, c(H(b, x.phi), x.chi), b), S(x.phi, x.psi)));
      });
  add("extract.iv", "extract", true, [](const R& x) { return U(x.theta, c(H(x.phi), x.chi), lt(x.q)); },
      [](const R& x) {
        Interval b = lt(x.q);
        return c(U(x.theta, c(H(b, x.phi), x.chi), b), H(x.phi));
      });
  auto v_lhs = [](const R& x) { return U(d(U(x.phi, x.psi), x.chi), x.theta, lt(x.q)); };
  auto v_rhs = [](const R& x) {
    Interval b = lt(x.q);
    Mtl inv = d(U(x.phi, x.psi, b), x.chi);
    return d(U(inv, x.theta, b), call({U(inv, G(b, x.phi), b), Fd(b, x.theta), Fe(x.q, U(x.phi, x.psi))}));
  };
  add("extract.v", "extract", true, v_lhs, v_rhs);
  add("extract.v.complete", "extract", false, v_lhs, [v_rhs](const R& x) {
    Interval b = lt(x.q);
    return d(v_rhs(x), call({G(b, x.phi), Fe(x.q, c(x.phi, U(x.phi, x.psi))), Fd(b, x.theta)}));
  });
  auto vi_lhs = [](const R& x) { return U(d(G(x.phi), x.chi), x.theta, lt(x.q)); };
  auto vi_rhs = [](const R& x) {
    Interval b = lt(x.q);
    return d(U(x.chi, x.theta, b), call({U(x.chi, G(b, x.phi), b), Fd(b, x.theta), Fe(x.q, G(x.phi))}));
  };
  add("extract.vi", "extract", true, vi_lhs, vi_rhs);
  add("extract.vi.complete", "extract", false, vi_lhs, [vi_rhs](const R& x) {
    Interval b = lt(x.q);
    return d(vi_rhs(x), call({G(b, x.phi), Fe(x.q, c(x.phi, G(x.phi))), Fd(b, x.theta)}));
  });
  add("extract.vii", "extract", true, [](const R& x) { return U(d(S(x.phi, x.psi), x.chi), x.theta, lt(x.q)); },
      [](const R& x) {
        Interval b = lt(x.q);
        return d(U(d(S(x.phi, x.psi, b), x.chi), x.theta, b),
                 c(U(dall({H(b, x.phi), S(x.phi, x.psi, b), x.chi}), x.theta, b), S(x.phi, x.psi)));
      });
  add("extract.viii", "extract", true, [](const R& x) { return U(d(H(x.phi), x.chi), x.theta, lt(x.q)); },
      [](const R& x) {
        Interval b = lt(x.q);
        return d(U(x.chi, x.theta, b), c(U(d(H(b, x.phi), x.chi), x.theta, b), H(x.phi)));
      });
  add("extract.closed-bound", "extract", false, [](const R& x) { return U(x.theta, x.chi, le(x.q)); },
      [](const R& x) { return d(U(x.theta, x.chi, lt(x.q)), c(G(lt(x.q), x.theta), Fe(x.q, x.chi))); });
  add("extract.closed-box", "extract", false, [](const R& x) { return G(le(x.q), x.phi); },
      [](const R& x) { return c(G(lt(x.q), x.phi), Fe(x.q, x.phi)); });

  // Separation of the LTL skeleton: Since out of Until.
  add("skeleton.target.since", "skeleton", false, [](const R& x) { return U(x.theta, c(S(x.phi, x.psi), x.chi)); },
      [](const R& x) {
        Mtl rest = U(c(x.theta, x.phi), x.chi);
        return dall({U(x.theta, call({x.psi, x.theta, rest})), c(x.psi, rest), call({S(x.phi, x.psi), x.phi, rest})});
      });
  add("skeleton.target.history", "skeleton", false, [](const R& x) { return U(x.theta, c(H(x.phi), x.chi)); },
      [](const R& x) { return call({H(x.phi), x.phi, U(c(x.theta, x.phi), x.chi)}); });
  add("skeleton.invariant.history", "skeleton", false, [](const R& x) { return U(d(x.theta, H(x.phi)), x.chi); },
      [](const R& x) {
        return d(U(x.theta, x.chi), call({H(x.phi), x.phi, U(x.phi, d(x.chi, U(x.theta, x.chi)))}));
      });
  add("skeleton.invariant.dual", "skeleton", false, [](const R& x) { return U(x.phi, x.psi); },
      [](const R& x) {
        Mtl k = kplus(n(x.phi));
        return call({U(T(), x.psi), n(k), n(U(n(x.psi), c(n(x.psi), d(n(x.phi), k))))});
      });

  // One Since unit L = phi S psi in both arguments of an unbounded Until.
  auto L = [](const R& x) { return S(x.phi, x.psi); };
  auto onset = [](const R& x) { return c(d(x.psi, kplus(x.psi)), kplus(x.phi)); };
  auto stay = [onset](const R& x) { return d(x.phi, onset(x)); };
  auto drop = [](const R& x) { return d(n(kplus(x.phi)), call({n(kplus(x.psi)), n(x.psi), n(x.phi)})); };
  add("skeleton.unit.target-neg", "skeleton", false, [L](const R& x) { return U(x.theta, c(n(L(x)), x.chi)); },
      [L](const R& x) {
        Mtl rest = U(c(x.theta, n(x.psi)), x.chi);
        Mtl gap = d(n(x.phi), kminus(n(x.phi)));
        return dall({U(x.theta, c(x.chi, kminus(n(x.phi)))), U(x.theta, call({gap, n(x.psi), x.theta, rest})),
                     call({n(x.psi), d(n(L(x)), n(x.phi)), rest})});
      });
  add("skeleton.unit.same", "skeleton", false, [L](const R& x) { return U(d(L(x), x.theta), c(L(x), x.chi)); },
      [L, onset, stay](const R& x) {
        Mtl run = U(stay(x), x.chi);
        return d(c(kplus(L(x)), run), U(d(L(x), x.theta), call({x.theta, onset(x), run})));
      });
  add("skeleton.unit.same-neg", "skeleton", false,
      [L](const R& x) { return U(d(n(L(x)), x.theta), c(n(L(x)), x.chi)); },
      [L, onset, drop](const R& x) {
        Mtl run = U(n(onset(x)), x.chi);
        return d(c(n(kplus(L(x))), run), U(d(n(L(x)), x.theta), call({x.theta, drop(x), run})));
      });
  add("skeleton.unit.mixed", "skeleton", false, [L](const R& x) { return U(d(L(x), x.theta), c(n(L(x)), x.chi)); },
      [L, onset, drop](const R& x) {
        Mtl run = U(c(n(onset(x)), x.theta), x.chi);
        Mtl inv = d(L(x), x.theta);
        return d(c(n(kplus(L(x))), run), U(inv, call({inv, drop(x), run})));
      });
  add("skeleton.unit.mixed-neg", "skeleton", false,
      [L](const R& x) { return U(d(n(L(x)), x.theta), c(L(x), x.chi)); },
      [L, onset, stay](const R& x) {
        Mtl run = U(c(stay(x), x.theta), x.chi);
        Mtl inv = d(n(L(x)), x.theta);
        return d(c(kplus(L(x)), run), U(inv, call({inv, onset(x), run})));
      });

  // Right limits pushed through other operators.
  add("limit.since", "limit", false, [](const R& x) { return kplus(S(x.phi, x.psi)); },
      [](const R& x) { return c(kplus(x.phi), dall({kplus(x.psi), x.psi, c(S(x.phi, x.psi), x.phi)})); });
  add("limit.history", "limit", false, [](const R& x) { return kplus(H(x.phi)); },
      [](const R& x) { return call({H(x.phi), x.phi, kplus(x.phi)}); });
  add("limit.until", "limit", false, [](const R& x) { return kplus(U(x.phi, x.psi)); },
      [](const R& x) { return c(kplus(x.phi), U(x.phi, x.psi)); });
  add("limit.box", "limit", false, [](const R& x) { return kplus(G(x.phi)); }, [](const R& x) { return G(x.phi); });
  add("limit.kminus", "limit", false, [](const R& x) { return kplus(kminus(x.phi)); },
      [](const R& x) { return kplus(x.phi); });
  add("limit.kplus", "limit", false, [](const R& x) { return kplus(kplus(x.phi)); },
      [](const R& x) { return kplus(x.phi); });
  add("limit.not", "limit", false, [](const R& x) { return kplus(n(x.phi)); }, [](const R& x) { return n(kplus(x.phi)); });
  add("limit.and", "limit", false, [](const R& x) { return kplus(c(x.phi, x.psi)); },
      [](const R& x) { return c(kplus(x.phi), kplus(x.psi)); });
  add("limit.or", "limit", false, [](const R& x) { return kplus(d(x.phi, x.psi)); },
      [](const R& x) { return d(kplus(x.phi), kplus(x.psi)); });

  // Completion: an unbounded Until split at N.
  add("split.until", "split", true, [](const R& x) { return U(x.phi, x.psi); },
      [](const R& x) {
        Rational N = x.q;
        return d(U(x.phi, x.psi, lt(N)), c(G(lt(N), x.phi), Fe(N, d(x.psi, c(x.phi, U(x.phi, x.psi))))));
      });
  add("split.box", "split", false, [](const R& x) { return G(x.phi); },
      [](const R& x) { return c(G(lt(x.q), x.phi), Fe(x.q, c(x.phi, G(x.phi)))); });

  // Worked example: F H psi in separated form.
  add("example.history", "example", true, [](const R& x) { return dia_f(H(x.psi)); },
      [](const R& x) {
        const Mtl& s = x.psi;
        Rational two(2);
        return call({Pe(Rational(1), c(s, H(s))), H(lt(Rational(1)), s), s,
                     d(U(s, s, le(two)), c(G(le(two), s), Fe(two, U(s, s))))});
      });
  return rs;
}

std::vector<Rule> with_duals() {
  std::vector<Rule> rs = base_rules();
  std::size_t n0 = rs.size();
  for (std::size_t i = 0; i < n0; ++i) {
    Rule m = rs[i];
    if (m.family == "example") continue;
    m.name += ".past";
    auto l = rs[i].lhs, r = rs[i].rhs;
    m.lhs = [l](const R& x) { return detail::mirror(l(x)); };
    m.rhs = [r](const R& x) { return detail::mirror(r(x)); };
    rs.push_back(std::move(m));
  }
  return rs;
}

}  // namespace

const std::vector<Rule>& rule_catalog() {
  static const std::vector<Rule> rules = with_duals();
  return rules;
}

const Rule& find_rule(const std::string& name) {
  static const std::map<std::string, std::size_t> index = [] {
    std::map<std::string, std::size_t> m;
    const auto& rs = rule_catalog();
    for (std::size_t i = 0; i < rs.size(); ++i) m[rs[i].name] = i;
    return m;
  }();
  auto it = index.find(name);
  if (it == index.end()) throw std::out_of_range("unknown rule: " + name);
  return rule_catalog()[it->second];
}

RuleInstance random_instance(std::mt19937_64& rng, const std::vector<std::string>& props, std::size_t max_size) {
  RandomMtlConfig cfg;
  cfg.props = props;
  cfg.max_size = max_size;
  RuleInstance x;
  x.phi = random_mtl(rng, cfg);
  x.psi = random_mtl(rng, cfg);
  x.chi = random_mtl(rng, cfg);
  x.theta = random_mtl(rng, cfg);
  std::uniform_int_distribution<std::size_t> pick(0, cfg.constants.size() - 1);
  x.q = cfg.constants[pick(rng)];
  x.q2 = cfg.constants[pick(rng)];
  return x;
}

}  // namespace mtlkit
