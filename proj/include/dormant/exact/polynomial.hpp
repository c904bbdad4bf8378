#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dormant/exact/big_rational.hpp"

namespace dormant::exact {

/// Dense integer polynomial, lowest degree first, no trailing zeros.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);

  /// x^n - 1
  static IntPoly x_pow_minus_one(unsigned long n);

  const std::vector<BigInt>& coeffs() const { return c_; }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }

  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend bool operator==(const IntPoly&, const IntPoly&) = default;

  /// Exact quotient by a monic divisor. Throws DomainError when the
  /// remainder is nonzero.
  IntPoly divide_exact(const IntPoly& monic_divisor) const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<BigInt> c_;
};

/// Dense polynomial over Q, lowest degree first, trailing zeros trimmed.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<BigRational> coeffs);
  explicit RatPoly(const IntPoly& p);

  static RatPoly constant(const BigRational& c);
  /// c * x^k
  static RatPoly monomial(const BigRational& c, std::size_t k);

  const std::vector<BigRational>& coeffs() const { return c_; }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  BigRational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigRational(0); }
  const BigRational& leading() const { return c_.back(); }

  BigRational operator()(const BigRational& x) const;

  RatPoly& operator+=(const RatPoly& o);
  RatPoly& operator-=(const RatPoly& o);
  friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
  friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(RatPoly a, const BigRational& s);
  friend bool operator==(const RatPoly&, const RatPoly&) = default;

  /// Euclidean division: *this = q * divisor + r with deg r < deg divisor.
  std::pair<RatPoly, RatPoly> divmod(const RatPoly& divisor) const;

  /// Human-readable, highest degree first, e.g. "1/24*x^3 - 1/24*x".
  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<BigRational> c_;
};

}  // namespace dormant::exact
