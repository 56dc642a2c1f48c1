#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

namespace mtlkit {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Values that fit in 64-bit numerator/denominator are stored inline; anything
/// larger is promoted to a GMP rational. The split is invisible to callers:
/// equality, ordering and hashing are by value.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d);

  /// Parses "a", "-a", "a/b". Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  bool is_small() const { return big_ == nullptr; }
  bool is_zero() const;
  bool is_integer() const;
  int sign() const;

  /// Numerator / denominator as decimal strings.
  std::string numerator_str() const;
  std::string denominator_str() const;
  /// Denominator as int64; throws if it does not fit.
  std::int64_t denominator_i64() const;
  std::int64_t numerator_i64() const;

  /// "a" or "a/b".
  std::string str() const;

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// Largest integer <= value.
  Rational floor() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  std::size_t hash() const;

  struct Big;

 private:
  static Rational from_big(Big&& b);
  Big to_big() const;

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const Big> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

inline Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / Rational(2); }

/// Least common multiple of two positive integers held as rationals.
Rational lcm_integer(const Rational& a, const Rational& b);

}  // namespace mtlkit

template <>
struct std::hash<mtlkit::Rational> {
  std::size_t operator()(const mtlkit::Rational& q) const noexcept { return q.hash(); }
};
