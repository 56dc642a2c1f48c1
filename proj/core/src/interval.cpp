#include "mtlkit/interval.hpp"

#include <ostream>

#include <algorithm>
#include <stdexcept>

namespace mtlkit {

const Rational& Bound::value() const {
  if (!is_finite()) throw std::logic_error("value() of an infinite bound");
  return value_;
}

Bound Bound::operator-() const {
  switch (kind_) {
    case Kind::NegInf: return pos_inf();
    case Kind::PosInf: return neg_inf();
    default: return Bound(-value_);
  }
}

Bound operator+(const Bound& a, const Bound& b) {
  if (a.is_finite() && b.is_finite()) return Bound(a.value_ + b.value_);
  if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
    throw std::domain_error("inf - inf");
  if (a.is_pos_inf() || b.is_pos_inf()) return Bound::pos_inf();
  return Bound::neg_inf();
}

Bound operator*(const Bound& a, const Rational& r) {
  if (r.sign() <= 0) throw std::domain_error("bound scaled by non-positive factor");
  if (!a.is_finite()) return a;
  return Bound(a.value_ * r);
}

std::strong_ordering operator<=>(const Bound& a, const Bound& b) {
  auto rank = [](Bound::Kind k) { return k == Bound::Kind::NegInf ? 0 : (k == Bound::Kind::Finite ? 1 : 2); };
  if (a.kind_ != b.kind_) return rank(a.kind_) <=> rank(b.kind_);
  if (!a.is_finite()) return std::strong_ordering::equal;
  return a.value_ <=> b.value_;
}

std::string Bound::str() const {
  switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "inf";
    default: return value_.str();
  }
}

Bound Bound::parse(std::string_view s) {
  if (s == "inf" || s == "+inf") return pos_inf();
  if (s == "-inf") return neg_inf();
  return Bound(Rational::parse(s));
}

Bound max(const Bound& a, const Bound& b) { return a < b ? b : a; }
Bound min(const Bound& a, const Bound& b) { return b < a ? b : a; }

std::optional<Interval> Interval::try_make(Bound lo, bool lo_closed, Bound hi, bool hi_closed) {
  if (!lo.is_finite()) lo_closed = false;
  if (!hi.is_finite()) hi_closed = false;
  if (lo.is_pos_inf() || hi.is_neg_inf()) return std::nullopt;
  if (hi < lo) return std::nullopt;
  if (lo == hi && !(lo_closed && hi_closed)) return std::nullopt;
  return Interval{std::move(lo), std::move(hi), lo_closed, hi_closed};
}

Interval Interval::make(Bound lo, bool lo_closed, Bound hi, bool hi_closed) {
  std::string desc = (lo_closed ? "[" : "(") + lo.str() + "," + hi.str() + (hi_closed ? "]" : ")");
  auto i = try_make(std::move(lo), lo_closed, std::move(hi), hi_closed);
  if (!i) throw std::invalid_argument("empty interval " + desc);
  return *i;
}

bool Interval::contains(const Rational& t) const {
  Bound b(t);
  if (lo_closed ? b < lo : b <= lo) return false;
  if (hi_closed ? b > hi : b >= hi) return false;
  return true;
}

bool Interval::is_operator_constraint() const {
  if (!lo.is_finite() || lo.value().sign() < 0) return false;
  if (lo.value().is_zero() && lo_closed) return false;
  return true;
}

Interval operator+(const Interval& a, const Interval& b) {
  return Interval::make(a.lo + b.lo, a.lo_closed && b.lo_closed, a.hi + b.hi, a.hi_closed && b.hi_closed);
}

Interval Interval::negated() const { return Interval::make(-hi, hi_closed, -lo, lo_closed); }

Interval Interval::shifted(const Rational& q) const {
  return Interval::make(lo + Bound(q), lo_closed, hi + Bound(q), hi_closed);
}

Interval Interval::scaled(const Rational& r) const { return Interval::make(lo * r, lo_closed, hi * r, hi_closed); }

std::string Interval::str() const {
  return std::string(lo_closed ? "[" : "(") + lo.str() + "," + hi.str() + (hi_closed ? "]" : ")");
}

namespace {

// Orders by lower endpoint, closed starts before open starts at the same value.
bool starts_before(const Interval& a, const Interval& b) {
  if (a.lo != b.lo) return a.lo < b.lo;
  return a.lo_closed && !b.lo_closed;
}

// True if a (starting no later than b) overlaps or touches b so that a u b is an interval.
bool joins(const Interval& a, const Interval& b) {
  if (b.lo < a.hi) return true;
  if (b.lo == a.hi) return a.hi_closed || b.lo_closed;
  return false;
}

void extend_hi(Interval& a, const Interval& b) {
  if (b.hi > a.hi) {
    a.hi = b.hi;
    a.hi_closed = b.hi_closed;
  } else if (b.hi == a.hi) {
    a.hi_closed = a.hi_closed || b.hi_closed;
  }
}

}  // namespace

SatSet::SatSet(std::vector<Interval> parts) {
  std::sort(parts.begin(), parts.end(), starts_before);
  for (auto& p : parts) {
    if (!parts_.empty() && joins(parts_.back(), p))
      extend_hi(parts_.back(), p);
    else
      parts_.push_back(std::move(p));
  }
}

bool SatSet::is_all() const {
  return parts_.size() == 1 && parts_[0].lo.is_neg_inf() && parts_[0].hi.is_pos_inf();
}

bool SatSet::contains(const Rational& t) const {
  // Binary search on the first interval whose upper end is not below t.
  Bound b(t);
  auto it = std::lower_bound(parts_.begin(), parts_.end(), b,
                             [](const Interval& i, const Bound& v) { return i.hi < v; });
  for (; it != parts_.end(); ++it) {
    if (it->contains(t)) return true;
    if (it->lo > b) break;
  }
  return false;
}

SatSet SatSet::complement() const {
  std::vector<Interval> out;
  Bound cur = Bound::neg_inf();
  bool cur_closed = false;
  for (const auto& p : parts_) {
    if (auto gap = Interval::try_make(cur, cur_closed, p.lo, !p.lo_closed)) out.push_back(*gap);
    cur = p.hi;
    cur_closed = !p.hi_closed;
  }
  if (auto gap = Interval::try_make(cur, cur_closed, Bound::pos_inf(), false)) out.push_back(*gap);
  return SatSet(Canonical{}, std::move(out));
}

SatSet SatSet::intersect(const SatSet& o) const {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < parts_.size() && j < o.parts_.size()) {
    const Interval& a = parts_[i];
    const Interval& b = o.parts_[j];
    Bound lo;
    bool lo_c;
    if (a.lo > b.lo) {
      lo = a.lo;
      lo_c = a.lo_closed;
    } else if (b.lo > a.lo) {
      lo = b.lo;
      lo_c = b.lo_closed;
    } else {
      lo = a.lo;
      lo_c = a.lo_closed && b.lo_closed;
    }
    Bound hi;
    bool hi_c;
    bool advance_a;
    if (a.hi < b.hi) {
      hi = a.hi;
      hi_c = a.hi_closed;
      advance_a = true;
    } else if (b.hi < a.hi) {
      hi = b.hi;
      hi_c = b.hi_closed;
      advance_a = false;
    } else {
      hi = a.hi;
      hi_c = a.hi_closed && b.hi_closed;
      advance_a = !a.hi_closed || b.hi_closed;  // advance the one that ends no later
    }
    if (auto x = Interval::try_make(lo, lo_c, hi, hi_c)) out.push_back(*x);
    if (advance_a)
      ++i;
    else
      ++j;
  }
  return SatSet(std::move(out));
}

SatSet SatSet::unite(const SatSet& o) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), o.parts_.begin(), o.parts_.end());
  return SatSet(std::move(all));
}

SatSet SatSet::intersect(const Interval& i) const { return intersect(SatSet(Canonical{}, {i})); }

SatSet SatSet::shifted(const Rational& q) const {
  std::vector<Interval> out;
  out.reserve(parts_.size());
  for (const auto& p : parts_) out.push_back(p.shifted(q));
  return SatSet(Canonical{}, std::move(out));
}

SatSet SatSet::plus(const Interval& i) const {
  std::vector<Interval> out;
  out.reserve(parts_.size());
  for (const auto& p : parts_) out.push_back(p + i);
  return SatSet(std::move(out));
}

SatSet SatSet::scaled(const Rational& r) const {
  std::vector<Interval> out;
  out.reserve(parts_.size());
  for (const auto& p : parts_) out.push_back(p.scaled(r));
  return SatSet(Canonical{}, std::move(out));
}

std::vector<Rational> SatSet::endpoints() const {
  std::vector<Rational> out;
  for (const auto& p : parts_) {
    if (p.lo.is_finite()) out.push_back(p.lo.value());
    if (p.hi.is_finite() && p.hi != p.lo) out.push_back(p.hi.value());
  }
  // (a,b) u (b,c) shares b
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string SatSet::str() const {
  if (parts_.empty()) return "{}";
  std::string s;
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (k) s += " u ";
    s += parts_[k].is_singleton() ? "{" + parts_[k].lo.str() + "}" : parts_[k].str();
  }
  return s;
}

std::ostream& operator<<(std::ostream& os, const Interval& i) { return os << i.str(); }
std::ostream& operator<<(std::ostream& os, const SatSet& s) { return os << s.str(); }

}  // namespace mtlkit
