#include <unordered_map>

#include "transform_internal.hpp"

namespace mtlkit {

namespace {

using namespace detail;

struct PairHash {
  std::size_t operator()(const std::pair<Mtl, Mtl>& p) const noexcept {
    return p.first.hash() * 1000003u ^ p.second.hash();
  }
};

bool is_unbounded_until(const Mtl& f) { return f.kind() == MtlKind::Until && is_unbounded_op(f); }
bool is_unbounded_since(const Mtl& f) { return f.kind() == MtlKind::Since && is_unbounded_op(f); }

// Operands are Boolean combinations of bounded formulas, unbounded Until units
// free of unbounded past operators and unbounded Since units free of unbounded
// future operators. Past units are pulled out of Until one at a time.
class Separator {
 public:
  explicit Separator(std::size_t limit) : budget_("separate_ltl_skeleton", limit) {}

  Mtl sep(const Mtl& f) {
    if (is_bounded(f)) return f;
    switch (f.kind()) {
      case MtlKind::Not: return sneg(sep(f.arg()));
      case MtlKind::And: return sconj(sep(f.lhs()), sep(f.rhs()));
      case MtlKind::Or: return sdisj(sep(f.lhs()), sep(f.rhs()));
      case MtlKind::Until: return until(sep(f.lhs()), sep(f.rhs()));
      case MtlKind::Since: return mirror(until(mirror(sep(f.lhs())), mirror(sep(f.rhs()))));
      case MtlKind::DiaF: return until(mtl::tt(), sep(f.arg()));
      case MtlKind::DiaP: return mirror(until(mtl::tt(), mirror(sep(f.arg()))));
      case MtlKind::BoxF: return sneg(until(mtl::tt(), sneg(sep(f.arg()))));
      case MtlKind::BoxP: return sneg(mirror(until(mtl::tt(), mirror(sneg(sep(f.arg()))))));
      default: throw TransformError("separate_ltl_skeleton: unbounded operator under " + print_mtl(f));
    }
  }

 private:
  // K+ (future) or K- of a separated formula, pushed down to bounded subformulas and units.
  Mtl limit(bool future, const Mtl& f) {
    if (is_true(f) || is_false(f)) return f;
    switch (f.kind()) {
      case MtlKind::Not: return sneg(limit(future, f.arg()));
      case MtlKind::And: return sconj(limit(future, f.lhs()), limit(future, f.rhs()));
      case MtlKind::Or: return sdisj(limit(future, f.lhs()), limit(future, f.rhs()));
      case MtlKind::Kplus:
      case MtlKind::Kminus: return limit(future, f.arg());
      default: break;
    }
    if (is_unbounded_until(f) || is_unbounded_since(f)) {
      const Mtl& a = f.lhs();
      const Mtl& b = f.rhs();
      if (is_unbounded_until(f) == future) return sconj(limit(future, a), f);
      return sconj(limit(future, a), sdisj_all({limit(future, b), b, sconj(f, a)}));
    }
    return future ? mtl::kplus(f) : mtl::kminus(f);
  }

  static Mtl first_past_unit(const Mtl& f) {
    switch (f.kind()) {
      case MtlKind::Not: return first_past_unit(f.arg());
      case MtlKind::And:
      case MtlKind::Or: {
        Mtl l = first_past_unit(f.lhs());
        return l.valid() ? l : first_past_unit(f.rhs());
      }
      default: return is_unbounded_since(f) ? f : Mtl{};
    }
  }

  static Mtl assign(const Mtl& f, const Mtl& unit, bool value) {
    if (f == unit) return value ? mtl::tt() : mtl::ff();
    switch (f.kind()) {
      case MtlKind::Not: return sneg(assign(f.arg(), unit, value));
      case MtlKind::And: return sconj(assign(f.lhs(), unit, value), assign(f.rhs(), unit, value));
      case MtlKind::Or: return sdisj(assign(f.lhs(), unit, value), assign(f.rhs(), unit, value));
      default: return f;
    }
  }

  Mtl until(const Mtl& a, const Mtl& b) {
    if (is_false(a) || is_false(b)) return mtl::ff();
    if (is_true(b)) return limit(true, a);
    auto key = std::make_pair(a, b);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    budget_.step();
    Mtl unit = first_past_unit(a);
    if (!unit.valid()) unit = first_past_unit(b);
    Mtl out;
    if (!unit.valid()) {
      out = mtl::until(a, b);
    } else {
      // a = (!L | a1) & (L | a0), b = (L & b1) | (!L & b0)
      Mtl a1 = assign(a, unit, true), a0 = assign(a, unit, false);
      Mtl b1 = assign(b, unit, true), b0 = assign(b, unit, false);
      std::vector<std::pair<int, Mtl>> inv, tgt;
      if (a1 == a0) inv = {{0, a}};
      else inv = {{-1, a1}, {1, a0}};
      if (b1 == b0) tgt = {{0, b}};
      else tgt = {{1, b1}, {-1, b0}};
      out = mtl::tt();
      for (const auto& [si, alpha] : inv) {
        Mtl d = mtl::ff();
        for (const auto& [st, beta] : tgt) d = sdisj(d, eliminate(unit, si, alpha, st, beta));
        out = sconj(out, d);
      }
    }
    budget_.check(out.size());
    memo_.emplace(std::move(key), out);
    return out;
  }

  // (sL | alpha) U (tL & beta) with L = A S B; s, t in {-1, 0, 1}, 0 meaning absent.
  Mtl eliminate(const Mtl& L, int si, const Mtl& alpha, int st, const Mtl& beta) {
    const Mtl& A = L.lhs();
    const Mtl& B = L.rhs();
    Mtl nL = sneg(L);
    if (si == 0) {
      if (st > 0) {
        Mtl rest = until(sconj(alpha, A), beta);
        Mtl now = sdisj(B, sconj(L, A));
        return sdisj(sconj(now, rest), until(alpha, sconj_all({B, alpha, rest})));
      }
      Mtl rest = until(sconj(alpha, sneg(B)), beta);
      Mtl gap = limit(false, sneg(A));
      return sdisj_all({until(alpha, sconj(beta, gap)),
                        until(alpha, sconj_all({sdisj(sneg(A), gap), sneg(B), alpha, rest})),
                        sconj_all({sneg(B), sdisj(nL, sneg(A)), rest})});
    }
    Mtl inv = sdisj(si > 0 ? L : nL, alpha);
    if (st == 0) {
      Mtl nb = sneg(beta);
      Mtl ninv = sneg(inv);
      return sconj_all({until(mtl::tt(), beta), limit(true, inv),
                        sneg(until(nb, sconj(nb, sdisj(ninv, limit(true, ninv)))))});
    }
    Mtl kA = limit(true, A), kB = limit(true, B), kL = limit(true, L);
    Mtl onset = sconj(sdisj(B, kB), kA);
    Mtl stay = sdisj(A, onset);
    Mtl drop = sdisj(sneg(kA), sconj_all({sneg(kB), sneg(B), sneg(A)}));
    if (si > 0 && st > 0) {
      Mtl run = until(stay, beta);
      return sdisj(sconj(kL, run), until(inv, sconj_all({alpha, onset, run})));
    }
    if (si < 0 && st < 0) {
      Mtl run = until(sneg(onset), beta);
      return sdisj(sconj(sneg(kL), run), until(inv, sconj_all({alpha, drop, run})));
    }
    if (si > 0) {
      Mtl run = until(sconj(sneg(onset), alpha), beta);
      return sdisj(sconj(sneg(kL), run), until(inv, sconj_all({inv, drop, run})));
    }
    Mtl run = until(sconj(stay, alpha), beta);
    return sdisj(sconj(kL, run), until(inv, sconj_all({inv, onset, run})));
  }

  Budget budget_;
  std::unordered_map<std::pair<Mtl, Mtl>, Mtl, PairHash> memo_;
};

bool has_unbounded(const Mtl& f, bool future) {
  return future ? unbounded_until_count(f) > 0 : unbounded_since_count(f) > 0;
}

}  // namespace

Mtl separate_ltl_skeleton(const Mtl& phi, std::size_t budget) {
  return Separator(budget).sep(extract_unbounded(phi, budget));
}

bool is_skeleton_separated(const Mtl& f) {
  switch (f.kind()) {
    case MtlKind::Not: return is_skeleton_separated(f.arg());
    case MtlKind::And:
    case MtlKind::Or: return is_skeleton_separated(f.lhs()) && is_skeleton_separated(f.rhs());
    default: return !has_unbounded(f, true) || !has_unbounded(f, false);
  }
}

}  // namespace mtlkit
