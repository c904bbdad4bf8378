#include "dormant/exact/big_rational.hpp"

#include "dormant/errors.hpp"

namespace dormant::exact {

BigRational::BigRational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DivisionByZero();
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

BigRational BigRational::from_raw(mpq_class q) {
  q.canonicalize();
  BigRational r;
  r.q_ = std::move(q);
  return r;
}

BigRational BigRational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw ParameterError("malformed rational: '" + std::string(text) + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw ParameterError("malformed rational: '" + std::string(text) + "'");
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9')
        throw ParameterError("malformed rational: '" + std::string(text) + "'");
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return BigInt(digits, 10);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return BigRational(parse_int(text));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ParameterError("zero denominator: '" + std::string(text) + "'");
  return BigRational(parse_int(text.substr(0, slash)), den);
}

std::string BigRational::to_string() const {
  if (is_integer()) return q_.get_num().get_str(10);
  return q_.get_num().get_str(10) + "/" + q_.get_den().get_str(10);
}

BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw DivisionByZero();
  q_ /= o.q_;
  return *this;
}

BigRational pow(const BigRational& base, long exponent) {
  if (exponent < 0) {
    if (base.is_zero()) throw DivisionByZero();
    return BigRational(pow(base.denominator(), static_cast<unsigned long>(-exponent)),
                       pow(base.numerator(), static_cast<unsigned long>(-exponent)));
  }
  auto e = static_cast<unsigned long>(exponent);
  return BigRational(pow(base.numerator(), e), pow(base.denominator(), e));
}

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

BigInt factorial(unsigned long n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

}  // namespace dormant::exact
