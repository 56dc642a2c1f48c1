#include <stdexcept>

#include "transform_internal.hpp"

namespace mtlkit::detail {

using namespace mtl;

namespace {

using Clauses = std::vector<std::vector<Mtl>>;

std::size_t weight(const Clauses& c) {
  std::size_t w = 0;
  for (const auto& xs : c)
    for (const auto& x : xs) w += x.size();
  return w;
}

// Distributes `outer` over `inner`: with outer = Or this is DNF, with And CNF.
Clauses normal(const Mtl& f, bool positive, bool disjunctive, const Budget& budget) {
  MtlKind k = f.kind();
  if (k == MtlKind::Not) return normal(f.arg(), !positive, disjunctive, budget);
  if (k == MtlKind::True) {
    // true: DNF {{}}, CNF {}; false: DNF {}, CNF {{}}
    return positive == disjunctive ? Clauses{{}} : Clauses{};
  }
  if (k != MtlKind::And && k != MtlKind::Or) return {{positive ? f : sneg(f)}};
  bool is_and = (k == MtlKind::And) == positive;
  Clauses a = normal(f.lhs(), positive, disjunctive, budget);
  Clauses b = normal(f.rhs(), positive, disjunctive, budget);
  // Outer connective of the result: Or for DNF, And for CNF.
  bool concatenate = is_and != disjunctive;
  if (concatenate) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }
  Clauses out;
  for (const auto& x : a)
    for (const auto& y : b) {
      std::vector<Mtl> z = x;
      z.insert(z.end(), y.begin(), y.end());
      out.push_back(std::move(z));
    }
  budget.check(weight(out));
  return out;
}

}  // namespace

std::vector<std::vector<Mtl>> dnf(const Mtl& f, const Budget& budget) { return normal(f, true, true, budget); }
std::vector<std::vector<Mtl>> cnf(const Mtl& f, const Budget& budget) { return normal(f, true, false, budget); }

Mtl mirror(const Mtl& f) {
  switch (f.kind()) {
    case MtlKind::True:
    case MtlKind::Prop: return f;
    case MtlKind::Not: return neg(mirror(f.arg()));
    case MtlKind::And: return conj(mirror(f.lhs()), mirror(f.rhs()));
    case MtlKind::Or: return disj(mirror(f.lhs()), mirror(f.rhs()));
    case MtlKind::Until: return since(mirror(f.lhs()), mirror(f.rhs()), f.interval());
    case MtlKind::Since: return until(mirror(f.lhs()), mirror(f.rhs()), f.interval());
    case MtlKind::EvF: return ev_p(f.offset(), mirror(f.arg()));
    case MtlKind::EvP: return ev_f(f.offset(), mirror(f.arg()));
    case MtlKind::BoxF: return box_p(f.interval(), mirror(f.arg()));
    case MtlKind::BoxP: return box_f(f.interval(), mirror(f.arg()));
    case MtlKind::DiaF: return dia_p(f.interval(), mirror(f.arg()));
    case MtlKind::DiaP: return dia_f(f.interval(), mirror(f.arg()));
    case MtlKind::Kplus: return kminus(mirror(f.arg()));
    case MtlKind::Kminus: return kplus(mirror(f.arg()));
  }
  throw std::logic_error("unreachable");
}

}  // namespace mtlkit::detail
