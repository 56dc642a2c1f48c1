#include "mtlkit/random.hpp"

namespace mtlkit {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

Mtl gen(std::mt19937_64& rng, const RandomMtlConfig& cfg, std::size_t budget) {
  if (budget <= 1 || pick(rng, 5) == 0) {
    if (pick(rng, 8) == 0) return mtl::tt();
    return mtl::prop(cfg.props[pick(rng, cfg.props.size())]);
  }
  const Rational& q = cfg.constants[pick(rng, cfg.constants.size())];
  std::vector<int> ops{0, 1, 2, 3, 4};
  if (cfg.past) ops.push_back(5);
  if (cfg.derived) {
    for (int k : {6, 7, 8, 9}) ops.push_back(k);
    if (cfg.past)
      for (int k : {10, 11, 12, 13}) ops.push_back(k);
  }
  int op = ops[pick(rng, ops.size())];
  if (op <= 5 && op != 0 && budget < 3) op = 0;
  auto sub = [&](std::size_t b) { return gen(rng, cfg, b); };
  std::size_t rest = budget - 1;
  std::size_t left = rest >= 2 ? 1 + pick(rng, rest - 1) : 1;
  switch (op) {
    case 0: return mtl::neg(sub(rest));
    case 1: return mtl::conj(sub(left), sub(rest - left));
    case 2: return mtl::disj(sub(left), sub(rest - left));
    case 3:
    case 4: return mtl::until(sub(left), sub(rest - left), random_constraint(rng, cfg));
    case 5: return mtl::since(sub(left), sub(rest - left), random_constraint(rng, cfg));
    case 6: return mtl::ev_f(q, sub(rest));
    case 7: return mtl::dia_f(random_constraint(rng, cfg), sub(rest));
    case 8: return mtl::box_f(random_constraint(rng, cfg), sub(rest));
    case 9: return mtl::kplus(sub(rest));
    case 10: return mtl::ev_p(q, sub(rest));
    case 11: return mtl::dia_p(random_constraint(rng, cfg), sub(rest));
    case 12: return mtl::box_p(random_constraint(rng, cfg), sub(rest));
    default: return mtl::kminus(sub(rest));
  }
}

}  // namespace

Interval random_constraint(std::mt19937_64& rng, const RandomMtlConfig& cfg) {
  const auto& cs = cfg.constants;
  for (;;) {
    std::size_t kind = pick(rng, 6);
    if (kind == 0) return Interval::point(cs[pick(rng, cs.size())]);
    Bound lo = pick(rng, 2) ? Bound(Rational(0)) : Bound(cs[pick(rng, cs.size())]);
    Bound hi = cfg.unbounded && pick(rng, 4) == 0 ? Bound::pos_inf() : Bound(cs[pick(rng, cs.size())]);
    if (!(lo < hi)) continue;
    bool lc = lo.value().sign() > 0 && pick(rng, 2);
    bool hc = hi.is_finite() && pick(rng, 2);
    return Interval::make(lo, lc, hi, hc);
  }
}

Mtl random_mtl(std::mt19937_64& rng, const RandomMtlConfig& cfg) {
  return gen(rng, cfg, 1 + pick(rng, cfg.max_size));
}

}  // namespace mtlkit
