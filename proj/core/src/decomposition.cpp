#include <map>

#include "transform_internal.hpp"

namespace mtlkit {

namespace {

using namespace detail;

Interval iv(const Rational& lo, bool lo_closed, const Rational& hi, bool hi_closed) {
  return Interval::make(lo, lo_closed, hi, hi_closed);
}

DecompositionFormula slice(std::vector<Mtl> points, const std::vector<Mtl>& gaps, std::size_t from, std::size_t to) {
  DecompositionFormula d;
  d.points = std::move(points);
  d.gaps.assign(gaps.begin() + static_cast<std::ptrdiff_t>(from), gaps.begin() + static_cast<std::ptrdiff_t>(to));
  return d;
}

struct Key {
  std::vector<Mtl> points, gaps;
  bool operator<(const Key& o) const {
    auto cmp = [](const std::vector<Mtl>& a, const std::vector<Mtl>& b) {
      if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == b[i]) continue;
        if (a[i].hash() != b[i].hash()) return a[i].hash() < b[i].hash() ? -1 : 1;
        std::string x = print_mtl(a[i]), y = print_mtl(b[i]);
        return x < y ? -1 : 1;
      }
      return 0;
    };
    int c = cmp(points, o.points);
    return c != 0 ? c < 0 : cmp(gaps, o.gaps) < 0;
  }
};

class Builder {
 public:
  Mtl build(const DecompositionFormula& d) {
    Key key{d.points, d.gaps};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Mtl out = compute(d);
    memo_.emplace(std::move(key), out);
    return out;
  }

 private:
  Mtl compute(const DecompositionFormula& d) {
    using namespace mtl;
    const std::size_t n = d.n();
    const auto& ph = d.points;
    auto psi = [&](std::size_t i) -> const Mtl& { return d.gaps[i - 1]; };
    if (n == 1) return sconj(ph[0], box_f(iv(0, false, 1, false), psi(1)));
    const Rational h(1, static_cast<std::int64_t>(2 * n));
    const Interval step = iv(0, false, h, false);
    std::vector<Mtl> out;

    // Forward: z_1 .. z_{n-1} in [k/2n, (k+1)/2n), k < n.
    for (std::size_t k = 0; k < n; ++k) {
      Rational kq(static_cast<std::int64_t>(k));
      Mtl inner = sconj(ph[n - 1], box_f(step, psi(n)));
      for (std::size_t i = n - 2; i >= 1; --i) inner = sconj(ph[i], until(psi(i + 1), inner, step));
      Interval first = k == 0 ? step : iv(kq * h, true, (kq + 1) * h, false);
      out.push_back(sconj_all({ph[0], until(psi(1), inner, first), box_f(iv((kq + 1) * h, true, 1, false), psi(n))}));
    }
    // Backward: the same, n <= k < 2n, read backwards from x+1.
    for (std::size_t k = n; k < 2 * n; ++k) {
      Rational kq(static_cast<std::int64_t>(k));
      Rational back = Rational(static_cast<std::int64_t>(2 * n)) - kq;
      Mtl inner = sconj(ph[1], box_p(step, psi(1)));
      for (std::size_t i = 2; i <= n - 1; ++i) inner = sconj(ph[i], since(psi(i), inner, step));
      Mtl tail = since(psi(n), inner, iv((back - 1) * h, false, back * h, true));
      out.push_back(sconj_all({ev_f(Rational(1), tail), box_f(iv(0, false, kq * h, false), psi(1)), ph[0]}));
    }
    // Straddling: z_l < x + k/2n <= z_{l+1}.
    for (std::size_t k = 1; k < 2 * n; ++k) {
      Rational at = Rational(static_cast<std::int64_t>(k)) * h;
      Rational rest = Rational(1) - at;
      for (std::size_t l = 1; l + 1 < n; ++l) {
        std::vector<Mtl> left(ph.begin(), ph.begin() + static_cast<std::ptrdiff_t>(l + 1));
        Mtl sigma = scale_mtl(build(slice(left, d.gaps, 0, l + 1)), at);
        auto tau = [&](std::size_t j) {
          std::vector<Mtl> pts{tt()};
          pts.insert(pts.end(), ph.begin() + static_cast<std::ptrdiff_t>(j + 1), ph.end());
          return scale_mtl(build(slice(pts, d.gaps, j, n)), rest);
        };
        Mtl there = sdisj(sconj(psi(l + 1), tau(l)), sconj(ph[l + 1], tau(l + 1)));
        out.push_back(sconj(sigma, ev_f(at, there)));
      }
    }
    return sdisj_all(out);
  }

  std::map<Key, Mtl> memo_;
};

}  // namespace

Mtl decomposition_to_mtl(const DecompositionFormula& d) {
  if (d.n() == 0 || d.points.size() != d.n()) throw TransformError("decomposition formula needs n >= 1 points and gaps");
  return Builder().build(d);
}

Fo decomposition_to_fo(const DecompositionFormula& d) {
  using namespace fo;
  const std::size_t n = d.n();
  if (n == 0 || d.points.size() != n) throw TransformError("decomposition formula needs n >= 1 points and gaps");
  auto at = [](const Mtl& m, const Term& t) { return subst_term(mtl_to_fo(m), "x", t); };
  std::vector<Term> chain{var("x")};
  for (std::size_t i = 1; i < n; ++i) chain.push_back(var("z" + std::to_string(i)));
  chain.push_back(var("y"));
  std::vector<Fo> parts;
  for (std::size_t i = 1; i < n; ++i) parts.push_back(less(chain[i - 1], chain[i]));
  if (n > 1) parts.push_back(less(chain[n - 1], chain[n]));
  for (std::size_t i = 0; i < n; ++i) parts.push_back(at(d.points[i], chain[i]));
  for (std::size_t i = 1; i <= n; ++i) {
    std::string u = "u" + std::to_string(i);
    parts.push_back(forall(u, implies(conj(less(chain[i - 1], var(u)), less(var(u), chain[i])), at(d.gaps[i - 1], var(u)))));
  }
  Fo body = conj_all(parts);
  for (std::size_t i = n - 1; i >= 1; --i) body = exists(chain[i].var, body);
  return alpha_normalize(conj(less(var("x"), var("y")), body));
}

}  // namespace mtlkit
