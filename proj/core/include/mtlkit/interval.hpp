#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mtlkit/rational.hpp"

namespace mtlkit {

/// An extended rational: -inf, a finite value, or +inf.
class Bound {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  Bound() = default;
  Bound(Rational v) : kind_(Kind::Finite), value_(std::move(v)) {}  // NOLINT
  Bound(std::int64_t v) : kind_(Kind::Finite), value_(v) {}          // NOLINT
  static Bound neg_inf() { return Bound(Kind::NegInf); }
  static Bound pos_inf() { return Bound(Kind::PosInf); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  /// Only valid when finite.
  const Rational& value() const;

  Bound operator-() const;
  friend Bound operator+(const Bound& a, const Bound& b);
  friend Bound operator-(const Bound& a, const Bound& b) { return a + (-b); }
  friend Bound operator*(const Bound& a, const Rational& r);  // r > 0

  friend bool operator==(const Bound& a, const Bound& b) = default;
  friend std::strong_ordering operator<=>(const Bound& a, const Bound& b);

  /// "inf", "-inf" or the rational literal.
  std::string str() const;
  static Bound parse(std::string_view s);

 private:
  explicit Bound(Kind k) : kind_(k) {}
  Kind kind_ = Kind::Finite;
  Rational value_;
};

Bound max(const Bound& a, const Bound& b);
Bound min(const Bound& a, const Bound& b);

/// Non-empty interval with extended-rational endpoints. Infinite endpoints are
/// always open; a degenerate interval is a closed singleton.
struct Interval {
  Bound lo;
  Bound hi;
  bool lo_closed = false;
  bool hi_closed = false;

  /// Throws std::invalid_argument when the data does not describe a non-empty interval.
  static Interval make(Bound lo, bool lo_closed, Bound hi, bool hi_closed);
  /// Returns nullopt for empty data instead of throwing.
  static std::optional<Interval> try_make(Bound lo, bool lo_closed, Bound hi, bool hi_closed);

  static Interval open(Bound lo, Bound hi) { return make(std::move(lo), false, std::move(hi), false); }
  static Interval closed(Bound lo, Bound hi) { return make(std::move(lo), true, std::move(hi), true); }
  static Interval point(const Rational& q) { return make(q, true, q, true); }
  static Interval whole() { return make(Bound::neg_inf(), false, Bound::pos_inf(), false); }
  /// (0, inf): the vacuous constraint of an LTL operator.
  static Interval positive() { return make(Rational(0), false, Bound::pos_inf(), false); }

  bool contains(const Rational& t) const;
  bool is_bounded() const { return hi.is_finite() && lo.is_finite(); }
  bool is_singleton() const { return lo == hi; }

  /// Valid constraint for an MTL operator: endpoints in Q>=0 u {inf}, subset of (0, inf).
  bool is_operator_constraint() const;

  /// Pointwise sums and differences {a + b}, {a - b}.
  friend Interval operator+(const Interval& a, const Interval& b);
  Interval negated() const;
  Interval shifted(const Rational& q) const;
  Interval scaled(const Rational& r) const;  // r > 0

  friend bool operator==(const Interval& a, const Interval& b) = default;

  /// Interval literal "(a,b)", "[a,b)", "(a,inf)"; singletons print as "[a,a]".
  std::string str() const;
};

/// Canonical finite union of pairwise-disjoint, non-adjacent intervals,
/// sorted by position. Identical point sets have identical representations.
class SatSet {
 public:
  SatSet() = default;
  /// Normalizes an arbitrary list of intervals.
  explicit SatSet(std::vector<Interval> parts);

  static SatSet empty() { return {}; }
  static SatSet all() { return SatSet({Interval::whole()}); }

  const std::vector<Interval>& intervals() const { return parts_; }
  bool is_empty() const { return parts_.empty(); }
  bool is_all() const;
  bool contains(const Rational& t) const;

  SatSet complement() const;
  SatSet intersect(const SatSet& o) const;
  SatSet unite(const SatSet& o) const;
  SatSet intersect(const Interval& i) const;
  /// {t + q : t in S}
  SatSet shifted(const Rational& q) const;
  /// {t + d : t in S, d in I}
  SatSet plus(const Interval& i) const;
  /// {t - d : t in S, d in I}
  SatSet minus(const Interval& i) const { return plus(i.negated()); }
  SatSet scaled(const Rational& r) const;

  /// All finite endpoints, sorted and deduplicated.
  std::vector<Rational> endpoints() const;

  friend bool operator==(const SatSet& a, const SatSet& b) = default;

  std::string str() const;

 private:
  struct Canonical {};
  SatSet(Canonical, std::vector<Interval> parts) : parts_(std::move(parts)) {}
  std::vector<Interval> parts_;
};

std::ostream& operator<<(std::ostream& os, const Interval& i);
std::ostream& operator<<(std::ostream& os, const SatSet& s);

}  // namespace mtlkit
