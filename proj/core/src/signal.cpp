#include "mtlkit/signal.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace mtlkit {

Signal::Signal(std::vector<std::string> props, Valuation everywhere) : props_(std::move(props)), gap_vals_{everywhere} {
  if (props_.size() > kMaxProps) throw std::invalid_argument("too many propositions");
}

Signal Signal::from_cells(std::vector<std::string> props, std::vector<Rational> breaks,
                          std::vector<Valuation> point_vals, std::vector<Valuation> gap_vals) {
  if (props.size() > kMaxProps) throw std::invalid_argument("too many propositions");
  if (point_vals.size() != breaks.size() || gap_vals.size() != breaks.size() + 1)
    throw std::invalid_argument("cell arrays have inconsistent sizes");
  for (std::size_t i = 1; i < breaks.size(); ++i)
    if (!(breaks[i - 1] < breaks[i])) throw std::invalid_argument("unordered breakpoints");
  Signal s;
  s.props_ = std::move(props);
  s.breaks_ = std::move(breaks);
  s.point_vals_ = std::move(point_vals);
  s.gap_vals_ = std::move(gap_vals);
  s.canonicalize();
  return s;
}

Signal Signal::from_satsets(const std::map<std::string, SatSet>& sets) {
  std::vector<std::string> props;
  std::vector<Rational> breaks;
  for (const auto& [name, set] : sets) {
    props.push_back(name);
    auto e = set.endpoints();
    breaks.insert(breaks.end(), e.begin(), e.end());
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  auto value = [&](const Rational& t) {
    Valuation v = 0;
    std::size_t i = 0;
    for (const auto& [name, set] : sets) {
      if (set.contains(t)) v |= Valuation{1} << i;
      ++i;
    }
    return v;
  };
  std::vector<Valuation> pv, gv;
  if (breaks.empty()) {
    gv.push_back(value(Rational(0)));
  } else {
    gv.push_back(value(breaks.front() - Rational(1)));
    for (std::size_t i = 0; i < breaks.size(); ++i) {
      pv.push_back(value(breaks[i]));
      gv.push_back(i + 1 < breaks.size() ? value(midpoint(breaks[i], breaks[i + 1])) : value(breaks[i] + Rational(1)));
    }
  }
  return from_cells(std::move(props), std::move(breaks), std::move(pv), std::move(gv));
}

void Signal::canonicalize() {
  std::vector<Rational> b;
  std::vector<Valuation> pv, gv{gap_vals_[0]};
  for (std::size_t i = 0; i < breaks_.size(); ++i) {
    if (point_vals_[i] == gv.back() && gap_vals_[i + 1] == gv.back()) continue;
    b.push_back(breaks_[i]);
    pv.push_back(point_vals_[i]);
    gv.push_back(gap_vals_[i + 1]);
  }
  breaks_ = std::move(b);
  point_vals_ = std::move(pv);
  gap_vals_ = std::move(gv);
}

std::optional<std::size_t> Signal::prop_index(const std::string& name) const {
  for (std::size_t i = 0; i < props_.size(); ++i)
    if (props_[i] == name) return i;
  return std::nullopt;
}

Valuation Signal::value_at(const Rational& t) const {
  auto it = std::lower_bound(breaks_.begin(), breaks_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - breaks_.begin());
  if (it != breaks_.end() && *it == t) return point_vals_[i];
  return gap_vals_[i];
}

bool Signal::holds(const std::string& prop, const Rational& t) const {
  auto i = prop_index(prop);
  if (!i) throw std::out_of_range("unknown proposition '" + prop + "'");
  return (value_at(t) >> *i) & 1U;
}

SatSet Signal::prop_satset(const std::string& prop) const {
  auto idx = prop_index(prop);
  if (!idx) throw std::out_of_range("unknown proposition '" + prop + "'");
  auto bit = [&](Valuation v) { return ((v >> *idx) & 1U) != 0; };
  std::vector<Interval> parts;
  std::size_t k = breaks_.size();
  Bound prev = Bound::neg_inf();
  for (std::size_t i = 0; i <= k; ++i) {
    Bound next = i < k ? Bound(breaks_[i]) : Bound::pos_inf();
    if (bit(gap_vals_[i])) parts.push_back(Interval::make(prev, false, next, false));
    if (i < k && bit(point_vals_[i])) parts.push_back(Interval::point(breaks_[i]));
    prev = next;
  }
  return SatSet(std::move(parts));
}

std::vector<std::string> Signal::names(Valuation v) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < props_.size(); ++i)
    if ((v >> i) & 1U) out.push_back(props_[i]);
  return out;
}

Valuation Signal::mask(const std::vector<std::string>& names) const {
  Valuation v = 0;
  for (const auto& n : names) {
    auto i = prop_index(n);
    if (!i) throw std::invalid_argument("unknown proposition '" + n + "' in valuation");
    v |= Valuation{1} << *i;
  }
  return v;
}

Signal Signal::with_props(const std::vector<std::string>& extra) const {
  std::map<std::string, SatSet> sets;
  for (const auto& p : props_) sets[p] = prop_satset(p);
  for (const auto& p : extra) sets.try_emplace(p, SatSet::empty());
  return from_satsets(sets);
}

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

Signal validate_signal(const SignalData& data) {
  std::vector<std::string> props = sorted_unique(data.props);
  if (props.size() > Signal::kMaxProps) throw std::invalid_argument("too many propositions");
  Signal alphabet(props, 0);
  auto val = [&](const std::vector<std::string>& names) { return alphabet.mask(names); };

  struct Piece {
    Interval where;
    Valuation v;
  };
  std::vector<Piece> pieces;
  // Coverage so far ends at `end`, including it iff `end_included`.
  std::optional<Rational> end;
  bool end_included = false;
  Rational start = data.origin;
  for (const auto& seg : data.segments) {
    Rational lo = seg.from;
    bool lo_closed = seg.is_point || seg.at_from;
    if (!seg.is_point && !(seg.from < seg.to)) throw std::invalid_argument("unordered breakpoints in segment");
    if (!end) {
      if (!lo_closed) throw std::invalid_argument("gap at " + lo.str() + " before the first segment");
      start = lo;
    } else {
      if (lo < *end || (lo == *end && lo_closed && end_included))
        throw std::invalid_argument("overlap at " + lo.str());
      if (lo > *end || (!lo_closed && !end_included)) throw std::invalid_argument("gap at " + end->str());
    }
    if (seg.is_point) {
      pieces.push_back({Interval::point(lo), val(seg.props)});
      end = lo;
      end_included = true;
    } else {
      pieces.push_back({Interval::make(lo, lo_closed, seg.to, false), val(seg.props)});
      end = seg.to;
      end_included = false;
    }
  }
  Valuation left = val(data.left_tail), right = val(data.right_tail);
  Rational last = end ? *end : start;
  bool right_closed = end ? !end_included : true;

  std::vector<Rational> breaks;
  breaks.push_back(start);
  for (const auto& p : pieces) {
    breaks.push_back(p.where.lo.value());
    breaks.push_back(p.where.hi.value());
  }
  breaks.push_back(last);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  auto value_at = [&](const Rational& t) -> Valuation {
    if (t < start) return left;
    if (t > last || (t == last && right_closed)) return right;
    for (const auto& p : pieces)
      if (p.where.contains(t)) return p.v;
    throw std::logic_error("uncovered point in validated signal");
  };
  std::vector<Valuation> pv, gv;
  gv.push_back(left);
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    pv.push_back(value_at(breaks[i]));
    gv.push_back(i + 1 < breaks.size() ? value_at(midpoint(breaks[i], breaks[i + 1])) : right);
  }
  return Signal::from_cells(props, std::move(breaks), std::move(pv), std::move(gv));
}

SignalData to_data(const Signal& s) {
  SignalData d;
  d.props = s.props();  // already sorted when built through validate_signal / from_satsets
  std::sort(d.props.begin(), d.props.end());
  auto names = [&](Valuation v) {
    auto n = s.names(v);
    std::sort(n.begin(), n.end());
    return n;
  };
  const auto& b = s.breakpoints();
  const auto& pv = s.point_values();
  const auto& gv = s.gap_values();
  std::size_t k = b.size();
  d.left_tail = names(gv[0]);
  d.right_tail = names(gv[k]);
  if (k == 0) return d;
  d.origin = b[0];
  for (std::size_t i = 0; i < k; ++i) {
    if (i + 1 < k) {
      if (pv[i] == gv[i + 1]) {
        d.segments.push_back({false, b[i], b[i + 1], true, names(pv[i])});
      } else {
        d.segments.push_back({true, b[i], {}, true, names(pv[i])});
        d.segments.push_back({false, b[i], b[i + 1], false, names(gv[i + 1])});
      }
    } else if (pv[i] != gv[k]) {
      d.segments.push_back({true, b[i], {}, true, names(pv[i])});
    }
  }
  return d;
}

Signal random_signal(std::uint64_t seed, const RandomSignalConfig& cfg) {
  if (cfg.num_props == 0 || cfg.grid_denominator <= 0 || cfg.window.sign() <= 0)
    throw std::invalid_argument("random signal configuration must be positive");
  std::vector<std::string> props = cfg.prop_names;
  for (std::size_t i = props.size(); i < cfg.num_props; ++i) props.push_back(std::string(1, static_cast<char>('p' + i % 10)) + (i >= 10 ? std::to_string(i / 10) : ""));
  props = sorted_unique(props);
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::uint64_t n) { return n == 0 ? 0 : rng() % n; };
  Rational grid_max = (cfg.window * Rational(cfg.grid_denominator)).floor();
  std::int64_t span = grid_max.numerator_i64();
  std::uint64_t npoints = static_cast<std::uint64_t>(2 * span + 1);
  std::size_t k = static_cast<std::size_t>(uniform(cfg.max_pieces + 1));
  k = std::min<std::size_t>(k, npoints);
  std::set<std::int64_t> chosen;
  while (chosen.size() < k) chosen.insert(static_cast<std::int64_t>(uniform(npoints)) - span);
  std::vector<Rational> breaks;
  for (auto g : chosen) breaks.emplace_back(g, cfg.grid_denominator);
  Valuation full = props.size() == 64 ? ~Valuation{0} : ((Valuation{1} << props.size()) - 1);
  auto random_val = [&]() { return static_cast<Valuation>(rng()) & full; };
  std::vector<Valuation> gv{random_val()}, pv;
  for (std::size_t i = 0; i < k; ++i) {
    Valuation next = random_val();
    // Point values mostly continue a neighbour, so that both closed and open ends occur.
    switch (uniform(3)) {
      case 0: pv.push_back(gv.back()); break;
      case 1: pv.push_back(next); break;
      default: pv.push_back(random_val());
    }
    gv.push_back(next);
  }
  return Signal::from_cells(props, std::move(breaks), std::move(pv), std::move(gv));
}

Signal scale_signal(const Signal& s, const Rational& r) {
  if (r.sign() <= 0) throw std::invalid_argument("scale factor must be positive");
  std::vector<Rational> b;
  for (const auto& x : s.breakpoints()) b.push_back(x * r);
  return Signal::from_cells(s.props(), std::move(b), s.point_values(), s.gap_values());
}

std::string shifted_name(const std::string& base, std::int64_t j) {
  return base + "_at_" + (j < 0 ? "m" + std::to_string(-j) : std::to_string(j));
}

Signal shifted_signal(const Signal& s, std::int64_t lo, std::int64_t hi) {
  std::map<std::string, SatSet> sets;
  for (const auto& p : s.props()) {
    SatSet base = s.prop_satset(p);
    for (std::int64_t j = lo; j < hi; ++j) sets[shifted_name(p, j)] = base.shifted(Rational(-j));
  }
  return Signal::from_satsets(sets);
}

}  // namespace mtlkit
