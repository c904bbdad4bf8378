#include "dormant/vi/ball.hpp"

#include <sstream>

#include "dormant/errors.hpp"

namespace dormant::vi {

namespace {

constexpr mpfr_prec_t kRadiusPrec = 64;

Mpfr rad0() { return Mpfr(kRadiusPrec); }

// 2^-prec: bound on the relative error of one round-to-nearest operation.
Mpfr unit_roundoff(mpfr_prec_t prec) {
  Mpfr u = rad0();
  mpfr_set_ui_2exp(u.get(), 1, -static_cast<mpfr_exp_t>(prec), MPFR_RNDU);
  return u;
}

// |re| + |im|, rounded up; an upper bound on the modulus.
Mpfr magnitude(const Mpfr& re, const Mpfr& im) {
  Mpfr a = rad0(), b = rad0();
  mpfr_abs(a.get(), re.get(), MPFR_RNDU);
  mpfr_abs(b.get(), im.get(), MPFR_RNDU);
  mpfr_add(a.get(), a.get(), b.get(), MPFR_RNDU);
  return a;
}

Mpfr mul_up(const Mpfr& a, const Mpfr& b) {
  Mpfr r = rad0();
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}

Mpfr add_up(const Mpfr& a, const Mpfr& b) {
  Mpfr r = rad0();
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}

Mpfr scale_up(const Mpfr& a, unsigned long k) {
  Mpfr r = rad0();
  mpfr_mul_ui(r.get(), a.get(), k, MPFR_RNDU);
  return r;
}

}  // namespace

ComplexBall::ComplexBall(mpfr_prec_t prec) : re_(prec), im_(prec), rad_(kRadiusPrec) {}

ComplexBall ComplexBall::from_rational(const exact::BigRational& q, mpfr_prec_t prec) {
  ComplexBall out(prec);
  mpfr_set_q(out.re_.get(), q.raw().get_mpq_t(), MPFR_RNDN);
  out.rad_ = magnitude(out.re_, out.im_);
  out.rad_ = mul_up(out.rad_, unit_roundoff(prec));
  return out;
}

ComplexBall ComplexBall::root_of_unity(std::int64_t k, std::int64_t m, mpfr_prec_t prec) {
  if (m <= 0) throw ParameterError("root_of_unity: order must be positive");
  k %= m;
  if (k < 0) k += m;
  ComplexBall out(prec);
  Mpfr theta(prec);
  mpfr_const_pi(theta.get(), MPFR_RNDN);
  mpfr_mul_si(theta.get(), theta.get(), 2 * k, MPFR_RNDN);
  mpfr_div_si(theta.get(), theta.get(), m, MPFR_RNDN);
  mpfr_sin_cos(out.im_.get(), out.re_.get(), theta.get(), MPFR_RNDN);
  // |theta| < 2*pi carries <= 3 roundings (<= 4u relative, < 26u absolute);
  // sin and cos are 1-Lipschitz and add one more rounding each.
  out.rad_ = scale_up(unit_roundoff(prec), 64);
  return out;
}

ComplexBall ComplexBall::sin_pi_fraction(std::int64_t a, std::int64_t b, mpfr_prec_t prec) {
  if (b == 0) throw ParameterError("sin_pi_fraction: zero denominator");
  ComplexBall out(prec);
  Mpfr theta(prec);
  mpfr_const_pi(theta.get(), MPFR_RNDN);
  mpfr_mul_si(theta.get(), theta.get(), a, MPFR_RNDN);
  mpfr_div_si(theta.get(), theta.get(), b, MPFR_RNDN);
  mpfr_sin(out.re_.get(), theta.get(), MPFR_RNDN);
  // |theta| error <= 4u * pi * |a/b|; Lipschitz sin plus one rounding.
  Mpfr bound = rad0();
  mpfr_set_si(bound.get(), a < 0 ? -a : a, MPFR_RNDU);
  mpfr_div_si(bound.get(), bound.get(), b < 0 ? -b : b, MPFR_RNDU);
  mpfr_add_ui(bound.get(), bound.get(), 1, MPFR_RNDU);
  out.rad_ = mul_up(scale_up(unit_roundoff(prec), 16), bound);
  return out;
}

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
  ComplexBall c(a.precision());
  mpfr_add(c.re_.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
  mpfr_add(c.im_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  Mpfr round = mul_up(magnitude(c.re_, c.im_), unit_roundoff(c.precision()));
  c.rad_ = add_up(add_up(a.rad_, b.rad_), round);
  return c;
}

ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
  ComplexBall c(a.precision());
  mpfr_sub(c.re_.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
  mpfr_sub(c.im_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  Mpfr round = mul_up(magnitude(c.re_, c.im_), unit_roundoff(c.precision()));
  c.rad_ = add_up(add_up(a.rad_, b.rad_), round);
  return c;
}

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
  const mpfr_prec_t prec = a.precision();
  ComplexBall c(prec);
  Mpfr t1(prec), t2(prec);
  mpfr_mul(t1.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  mpfr_sub(c.re_.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re_.get(), b.im_.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im_.get(), b.re_.get(), MPFR_RNDN);
  mpfr_add(c.im_.get(), t1.get(), t2.get(), MPFR_RNDN);

  const Mpfr ma = magnitude(a.re_, a.im_);
  const Mpfr mb = magnitude(b.re_, b.im_);
  // Propagation |a|rb + ra|b| + ra*rb, plus <= 3u|a||b| for the center.
  Mpfr r = add_up(mul_up(ma, b.rad_), mul_up(a.rad_, mb));
  r = add_up(r, mul_up(a.rad_, b.rad_));
  r = add_up(r, mul_up(scale_up(unit_roundoff(prec), 3), mul_up(ma, mb)));
  c.rad_ = std::move(r);
  return c;
}

ComplexBall ComplexBall::inverse() const {
  const mpfr_prec_t prec = precision();
  // |z| >= (|re| + |im|) / sqrt(2) > 0.7 (|re| + |im|)
  Mpfr lower = rad0(), t = rad0();
  mpfr_abs(lower.get(), re_.get(), MPFR_RNDD);
  mpfr_abs(t.get(), im_.get(), MPFR_RNDD);
  mpfr_add(lower.get(), lower.get(), t.get(), MPFR_RNDD);
  mpfr_mul_ui(lower.get(), lower.get(), 7, MPFR_RNDD);
  mpfr_div_ui(lower.get(), lower.get(), 10, MPFR_RNDD);
  if (mpfr_cmp(rad_.get(), lower.get()) >= 0)
    throw PrecisionError("ball contains zero; cannot invert at " + std::to_string(prec) +
                         " bits");

  ComplexBall c(prec);
  Mpfr norm(prec), sq(prec);
  mpfr_sqr(norm.get(), re_.get(), MPFR_RNDN);
  mpfr_sqr(sq.get(), im_.get(), MPFR_RNDN);
  mpfr_add(norm.get(), norm.get(), sq.get(), MPFR_RNDN);
  mpfr_div(c.re_.get(), re_.get(), norm.get(), MPFR_RNDN);
  mpfr_div(c.im_.get(), im_.get(), norm.get(), MPFR_RNDN);
  mpfr_neg(c.im_.get(), c.im_.get(), MPFR_RNDN);

  // |1/(z+e) - 1/z| <= r / (|z| (|z| - r))
  Mpfr gap = rad0(), denom = rad0(), prop = rad0();
  mpfr_sub(gap.get(), lower.get(), rad_.get(), MPFR_RNDD);
  mpfr_mul(denom.get(), lower.get(), gap.get(), MPFR_RNDD);
  mpfr_div(prop.get(), rad_.get(), denom.get(), MPFR_RNDU);
  Mpfr round = mul_up(scale_up(unit_roundoff(prec), 8), magnitude(c.re_, c.im_));
  c.rad_ = add_up(prop, round);
  return c;
}

ComplexBall pow(const ComplexBall& base, std::int64_t exponent) {
  ComplexBall b = exponent < 0 ? base.inverse() : base;
  auto e = static_cast<std::uint64_t>(exponent < 0 ? -exponent : exponent);
  ComplexBall acc = ComplexBall::from_rational(exact::BigRational(1), base.precision());
  while (e) {
    if (e & 1) acc = acc * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return acc;
}

std::string ComplexBall::to_string(int digits) const {
  auto fmt = [&](const Mpfr& v, int d) {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", d, v.get());
    std::string out(s);
    mpfr_free_str(s);
    return out;
  };
  std::ostringstream os;
  os << fmt(re_, digits) << " + " << fmt(im_, digits) << "i +/- " << fmt(rad_, 3);
  return os.str();
}

exact::BigRational round_to_lattice(const ComplexBall& b, const exact::BigInt& denominator) {
  const mpfr_prec_t prec = b.precision();
  if (mpfr_cmpabs(b.im().get(), b.radius().get()) > 0)
    throw PrecisionError("value is not real within the certified radius");

  Mpfr x(prec), den(prec);
  mpfr_set_z(den.get(), denominator.get_mpz_t(), MPFR_RNDN);
  mpfr_mul(x.get(), b.re().get(), den.get(), MPFR_RNDN);
  // radius * D, plus the two roundings above.
  Mpfr mx = rad0(), dabs = rad0();
  mpfr_abs(mx.get(), x.get(), MPFR_RNDU);
  mpfr_set_z(dabs.get(), denominator.get_mpz_t(), MPFR_RNDU);
  mpfr_abs(dabs.get(), dabs.get(), MPFR_RNDU);
  Mpfr rx = add_up(mul_up(b.radius(), dabs), mul_up(scale_up(unit_roundoff(prec), 3), mx));

  Mpfr half = rad0();
  mpfr_set_ui_2exp(half.get(), 1, -1, MPFR_RNDN);
  if (mpfr_cmp(rx.get(), half.get()) >= 0)
    throw PrecisionError("error bound does not isolate a unique candidate at " +
                         std::to_string(prec) + " bits");

  Mpfr k(prec);
  mpfr_rint(k.get(), x.get(), MPFR_RNDN);
  Mpfr dist(prec);
  mpfr_sub(dist.get(), x.get(), k.get(), MPFR_RNDU);
  mpfr_abs(dist.get(), dist.get(), MPFR_RNDU);
  if (mpfr_cmp(dist.get(), rx.get()) > 0)
    throw PrecisionError("no candidate with denominator dividing " + denominator.get_str() +
                         " lies within the error bound");
  exact::BigInt num;
  mpfr_get_z(num.get_mpz_t(), k.get(), MPFR_RNDN);
  return exact::BigRational(num, denominator);
}

exact::BigInt round_to_integer(const ComplexBall& b) {
  Mpfr quarter = rad0();
  mpfr_set_ui_2exp(quarter.get(), 1, -2, MPFR_RNDN);
  Mpfr mx = rad0();
  mpfr_abs(mx.get(), b.re().get(), MPFR_RNDU);
  Mpfr bound = add_up(b.radius(), mul_up(scale_up(unit_roundoff(b.precision()), 2), mx));
  if (mpfr_cmp(bound.get(), quarter.get()) >= 0)
    throw PrecisionError("error bound " + std::to_string(mpfr_get_d(bound.get(), MPFR_RNDU)) +
                         " is not below 1/4 at " + std::to_string(b.precision()) + " bits");
  exact::BigRational v = round_to_lattice(b, exact::BigInt(1));
  return v.numerator();
}

}  // namespace dormant::vi
