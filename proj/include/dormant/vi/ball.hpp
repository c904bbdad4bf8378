#pragma once

#include <mpfr.h>

#include <cstdint>
#include <string>

#include "dormant/exact/big_rational.hpp"

namespace dormant::vi {

/// Owning handle for one mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Mpfr(const Mpfr& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Mpfr(Mpfr&& o) noexcept : Mpfr(mpfr_get_prec(o.v_)) { mpfr_swap(v_, o.v_); }
  Mpfr& operator=(const Mpfr& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Mpfr& operator=(Mpfr&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  ~Mpfr() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

 private:
  mpfr_t v_;
};

/// Complex ball: the true value lies within `radius` (in modulus) of
/// center_re + i*center_im. Radii are kept at 64 bits and rounded upward.
class ComplexBall {
 public:
  explicit ComplexBall(mpfr_prec_t prec);

  static ComplexBall from_rational(const exact::BigRational& q, mpfr_prec_t prec);
  /// exp(2*pi*i*k/m)
  static ComplexBall root_of_unity(std::int64_t k, std::int64_t m, mpfr_prec_t prec);
  /// sin(pi*a/b) as a real ball.
  static ComplexBall sin_pi_fraction(std::int64_t a, std::int64_t b, mpfr_prec_t prec);

  mpfr_prec_t precision() const { return re_.precision(); }
  const Mpfr& re() const { return re_; }
  const Mpfr& im() const { return im_; }
  const Mpfr& radius() const { return rad_; }

  /// Throws PrecisionError when the ball contains zero.
  ComplexBall inverse() const;

  friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);
  ComplexBall& operator+=(const ComplexBall& b) { return *this = *this + b; }
  ComplexBall& operator*=(const ComplexBall& b) { return *this = *this * b; }

  /// Center formatted with `digits` significant decimals plus the radius.
  std::string to_string(int digits = 20) const;

 private:
  Mpfr re_, im_, rad_;
};

ComplexBall pow(const ComplexBall& base, std::int64_t exponent);

/// The unique multiple of 1/denominator inside the ball (which must meet the
/// real axis). Throws PrecisionError if the radius does not isolate exactly
/// one such multiple.
exact::BigRational round_to_lattice(const ComplexBall& b, const exact::BigInt& denominator);

/// The integer within 1/4 of the ball center. PrecisionError otherwise.
exact::BigInt round_to_integer(const ComplexBall& b);

}  // namespace dormant::vi
