#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace dormant::exact {

using BigInt = mpz_class;

/// Exact rational number in lowest terms with a positive denominator.
///
/// Thin value wrapper over GMP's mpq; every public constructor and operator
/// leaves the value canonical, so equality is plain coefficient equality.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  BigRational(int v) : q_(static_cast<long>(v)) {}  // NOLINT
  BigRational(const BigInt& v) : q_(v) {}  // NOLINT
  BigRational(const BigInt& num, const BigInt& den);

  /// Parses "n" or "n/d" in base 10. Throws ParameterError on malformed input
  /// or a zero denominator.
  static BigRational parse(std::string_view text);

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  /// "n" for integers, "n/d" otherwise.
  std::string to_string() const;

  double to_double() const { return q_.get_d(); }

  const mpq_class& raw() const { return q_; }

  BigRational operator-() const { return from_raw(-q_); }
  BigRational& operator+=(const BigRational& o) { q_ += o.q_; return *this; }
  BigRational& operator-=(const BigRational& o) { q_ -= o.q_; return *this; }
  BigRational& operator*=(const BigRational& o) { q_ *= o.q_; return *this; }
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const BigRational& v) {
    return os << v.to_string();
  }

  static BigRational from_raw(mpq_class q);

 private:
  mpq_class q_;
};

/// Integer power; negative exponents invert (DivisionByZero on 0).
BigRational pow(const BigRational& base, long exponent);

BigInt pow(const BigInt& base, unsigned long exponent);

BigInt factorial(unsigned long n);

BigInt binomial(unsigned long n, unsigned long k);

}  // namespace dormant::exact
