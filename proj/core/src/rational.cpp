#include "mtlkit/rational.hpp"

#include <gmpxx.h>

#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace mtlkit {

struct Rational::Big {
  mpq_class v;
};

namespace {

using i128 = __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

bool fits(i128 v) { return v <= kMax && v >= -kMax; }

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class to_mpz(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  i128 nn = n, dd = d;
  if (dd < 0) {
    nn = -nn;
    dd = -dd;
  }
  i128 g = gcd128(nn, dd);
  if (g > 1) {
    nn /= g;
    dd /= g;
  }
  if (fits(nn) && fits(dd)) {
    num_ = static_cast<std::int64_t>(nn);
    den_ = static_cast<std::int64_t>(dd);
  } else {
    Big b{mpq_class(to_mpz(nn), to_mpz(dd))};
    b.v.canonicalize();
    *this = from_big(std::move(b));
  }
}

Rational Rational::from_big(Big&& b) {
  Rational r;
  const mpz_class& n = b.v.get_num();
  const mpz_class& d = b.v.get_den();
  if (n.fits_slong_p() && d.fits_slong_p() && n != std::numeric_limits<long>::min()) {
    r.num_ = n.get_si();
    r.den_ = d.get_si();
    return r;
  }
  r.big_ = std::make_shared<const Big>(std::move(b));
  return r;
}

Rational::Big Rational::to_big() const {
  if (big_) return *big_;
  return Big{mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)))};
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto valid_int = [](std::string_view t, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string ns = s.substr(0, slash);
  std::string ds = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(ns, true) || !valid_int(ds, false))
    throw std::invalid_argument("malformed rational literal '" + s + "'");
  if (ns[0] == '+') ns = ns.substr(1);
  mpz_class n(ns, 10), d(ds, 10);
  if (d == 0) throw std::invalid_argument("rational with zero denominator '" + s + "'");
  Big b{mpq_class(n, d)};
  b.v.canonicalize();
  return from_big(std::move(b));
}

bool Rational::is_zero() const { return big_ ? sgn(big_->v) == 0 : num_ == 0; }

bool Rational::is_integer() const { return big_ ? big_->v.get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(big_->v);
  return (num_ > 0) - (num_ < 0);
}

std::string Rational::numerator_str() const {
  return big_ ? big_->v.get_num().get_str() : std::to_string(num_);
}

std::string Rational::denominator_str() const {
  return big_ ? big_->v.get_den().get_str() : std::to_string(den_);
}

std::int64_t Rational::denominator_i64() const {
  if (big_) throw std::overflow_error("denominator exceeds 64 bits");
  return den_;
}

std::int64_t Rational::numerator_i64() const {
  if (big_) throw std::overflow_error("numerator exceeds 64 bits");
  return num_;
}

std::string Rational::str() const {
  if (is_integer()) return numerator_str();
  return numerator_str() + "/" + denominator_str();
}

Rational Rational::operator-() const {
  if (!big_) return Rational(-num_, den_);
  Big b{-big_->v};
  return from_big(std::move(b));
}

Rational operator+(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == b.den_) {
      i128 n = static_cast<i128>(a.num_) + b.num_;
      if (a.den_ == 1 && fits(n)) {
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        return r;
      }
    }
    i128 n = static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_;
    i128 d = static_cast<i128>(a.den_) * b.den_;
    i128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (fits(n) && fits(d)) {
      Rational r;
      r.num_ = static_cast<std::int64_t>(n);
      r.den_ = static_cast<std::int64_t>(d);
      return r;
    }
  }
  Rational::Big r{a.to_big().v + b.to_big().v};
  return Rational::from_big(std::move(r));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    i128 n = static_cast<i128>(a.num_) * b.num_;
    i128 d = static_cast<i128>(a.den_) * b.den_;
    i128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (fits(n) && fits(d)) {
      Rational r;
      r.num_ = static_cast<std::int64_t>(n);
      r.den_ = static_cast<std::int64_t>(d);
      return r;
    }
  }
  Rational::Big r{a.to_big().v * b.to_big().v};
  return Rational::from_big(std::move(r));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("rational division by zero");
  if (!a.big_ && !b.big_) {
    i128 n = static_cast<i128>(a.num_) * b.den_;
    i128 d = static_cast<i128>(a.den_) * b.num_;
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (fits(n) && fits(d)) {
      Rational r;
      r.num_ = static_cast<std::int64_t>(n);
      r.den_ = static_cast<std::int64_t>(d);
      return r;
    }
  }
  Rational::Big r{a.to_big().v / b.to_big().v};
  return Rational::from_big(std::move(r));
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (!a.big_ || !b.big_) return false;  // canonical: small and big never coincide
  return a.big_->v == b.big_->v;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    return l < r ? std::strong_ordering::less
                 : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  int c = cmp(a.to_big().v, b.to_big().v);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Rational Rational::floor() const {
  if (!big_) {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return Rational(q);
  }
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), big_->v.get_num_mpz_t(), big_->v.get_den_mpz_t());
  return from_big(Big{mpq_class(q)});
}

std::size_t Rational::hash() const {
  if (!big_) {
    std::size_t h = std::hash<std::int64_t>{}(num_);
    return h ^ (std::hash<std::int64_t>{}(den_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
  return std::hash<std::string>{}(str());
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

Rational lcm_integer(const Rational& a, const Rational& b) {
  if (!a.is_integer() || !b.is_integer()) throw std::invalid_argument("lcm of non-integers");
  mpz_class x(a.numerator_str(), 10), y(b.numerator_str(), 10), r;
  mpz_lcm(r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return Rational::parse(r.get_str());
}

}  // namespace mtlkit
