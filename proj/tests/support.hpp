#pragma once

#include <string>
#include <vector>

#include "mtlkit/eval.hpp"
#include "mtlkit/signal.hpp"

namespace mtlkit::testing {

inline SignalPiece seg(Rational a, Rational b, std::vector<std::string> props, bool closed = true) {
  SignalPiece p;
  p.from = std::move(a);
  p.to = std::move(b);
  p.at_from = closed;
  p.props = std::move(props);
  return p;
}

inline SignalPiece pt(Rational a, std::vector<std::string> props) {
  SignalPiece p;
  p.is_point = true;
  p.from = std::move(a);
  p.props = std::move(props);
  return p;
}

/// Signal over {P} true exactly on [lo, hi).
inline Signal p_on(const Rational& lo, const Rational& hi, const std::string& name = "P") {
  SignalData d;
  d.props = {name};
  d.segments = {seg(lo, hi, {name})};
  return validate_signal(d);
}

/// Signal over {P} true exactly at the given points.
inline Signal p_at(std::vector<Rational> points, const std::string& name = "P") {
  std::map<std::string, SatSet> m;
  std::vector<Interval> parts;
  for (const auto& q : points) parts.push_back(Interval::point(q));
  m[name] = SatSet(parts);
  return Signal::from_satsets(m);
}

/// P exactly at 2n/3, 0 <= n <= 6.
inline Signal two_thirds_fixture(const std::string& name = "P") {
  std::vector<Rational> v;
  for (int n = 0; n <= 6; ++n) v.emplace_back(2 * n, 3);
  return p_at(v, name);
}

/// Probe points that decide set equality for sets with endpoints among `ends`:
/// every endpoint, every midpoint and one point beyond each extreme.
inline std::vector<Rational> probes(std::vector<Rational> ends) {
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  std::vector<Rational> out;
  if (ends.empty()) return {Rational(0)};
  out.push_back(ends.front() - Rational(1));
  for (std::size_t i = 0; i < ends.size(); ++i) {
    if (i) out.push_back(midpoint(ends[i - 1], ends[i]));
    out.push_back(ends[i]);
  }
  out.push_back(ends.back() + Rational(1));
  return out;
}

}  // namespace mtlkit::testing

namespace mtlkit::testing {

/// The signal that agrees with `a` on (-inf, c] and with `b` on (c, inf).
inline Signal splice(const Signal& a, const Signal& b, const Rational& c) {
  std::map<std::string, SatSet> m;
  SatSet left({Interval::make(Bound::neg_inf(), false, c, true)});
  for (const auto& p : a.props())
    m[p] = a.prop_satset(p).intersect(left).unite(b.prop_satset(p).intersect(left.complement()));
  return Signal::from_satsets(m);
}

/// The history formula and its displayed separated form, psi = p -> P[=1] p.
inline const char* kHistory = "F H (p -> P[=1] p)";
inline const char* kHistorySeparated =
    "P[=1] ((p -> P[=1] p) & H (p -> P[=1] p)) & H[(0,1)] (p -> P[=1] p) & (p -> P[=1] p) & "
    "((p -> P[=1] p) U[(0,2]] (p -> P[=1] p) | G[(0,2]] (p -> P[=1] p) & F[=2] ((p -> P[=1] p) U (p -> P[=1] p)))";

struct ReachRow {
  const char* formula;
  const char* fr;
  const char* pr;
  int ud;
};

// Clause-by-clause hand computation.
inline const ReachRow kReachTable[] = {
    {"p", "0", "0", 0},
    {"true", "0", "0", 0},
    {"!p & q", "0", "0", 0},
    {"F[=1] p", "1", "0", 0},
    {"P[=1] p", "0", "1", 0},
    {"p S[(0,2)] q", "0", "2", 0},
    {"p U[(1,3)] q", "3", "0", 0},
    {"p U q", "inf", "0", 1},
    {"p S q", "0", "inf", 1},
    {"F G p", "inf", "0", 2},
    {kHistory, "inf", "inf", 2},
    {"(P[=2] p) U[(0,1)] q", "1", "2", 0},
    {"p U[(1,2)] P[=3] q", "2", "2", 0},
    {"F[=1/2] (p S[(0,1/4)] q)", "1/2", "0", 0},
    {"G[(0,2]] F[=1] p", "3", "0", 0},
    {"H[[1,2]] F[=3] p", "2", "2", 0},
    {"K+ p", "1", "0", 0},
    {"K- F[=1] p", "1", "1", 0},
    {"p U[=1/4] F[(0,1/2)] q", "3/4", "0", 0},
    {"(p U q) S[(0,1)] r", "inf", "1", 1},
    {"P[(1,inf)] p", "0", "inf", 1},
};

}  // namespace mtlkit::testing
