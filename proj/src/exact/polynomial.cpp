#include "dormant/exact/polynomial.hpp"

#include <algorithm>

#include "dormant/errors.hpp"

namespace dormant::exact {

namespace {

template <typename T>
std::string render(const std::vector<T>& c, const std::string& var) {
  if (c.empty()) return "0";
  std::string out;
  for (std::size_t k = c.size(); k-- > 0;) {
    BigRational v(c[k]);
    if (v.is_zero()) continue;
    bool neg = v.sign() < 0;
    if (neg) v = -v;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    bool unit = v == BigRational(1);
    if (k == 0 || !unit) out += v.to_string();
    if (k > 0) {
      if (!unit) out += "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

}  // namespace

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::x_pow_minus_one(unsigned long n) {
  std::vector<BigInt> c(n + 1, BigInt(0));
  c[0] = -1;
  c[n] = 1;
  return IntPoly(std::move(c));
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> out(a.c_.size() + b.c_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  return IntPoly(std::move(out));
}

IntPoly IntPoly::divide_exact(const IntPoly& d) const {
  if (!d.is_monic()) throw ParameterError("divide_exact: divisor must be monic");
  if (degree() < d.degree()) {
    if (is_zero()) return {};
    throw DomainError("divide_exact: nonzero remainder");
  }
  std::vector<BigInt> rem = c_;
  const auto dd = static_cast<std::size_t>(d.degree());
  std::vector<BigInt> q(rem.size() - dd, BigInt(0));
  for (std::size_t i = rem.size(); i-- > dd;) {
    const BigInt t = rem[i];
    if (t == 0) continue;
    q[i - dd] = t;
    for (std::size_t j = 0; j <= dd; ++j) rem[i - dd + j] -= t * d.c_[j];
  }
  if (std::any_of(rem.begin(), rem.end(), [](const BigInt& v) { return v != 0; }))
    throw DomainError("divide_exact: nonzero remainder");
  return IntPoly(std::move(q));
}

std::string IntPoly::to_string() const { return render(c_, "x"); }

RatPoly::RatPoly(std::vector<BigRational> coeffs) : c_(std::move(coeffs)) { trim(); }

RatPoly::RatPoly(const IntPoly& p) {
  c_.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) c_.emplace_back(v);
}

RatPoly RatPoly::constant(const BigRational& c) { return RatPoly({c}); }

RatPoly RatPoly::monomial(const BigRational& c, std::size_t k) {
  std::vector<BigRational> v(k + 1);
  v[k] = c;
  return RatPoly(std::move(v));
}

void RatPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

BigRational RatPoly::operator()(const BigRational& x) const {
  BigRational acc;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
  return acc;
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigRational> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return RatPoly(std::move(out));
}

RatPoly operator*(RatPoly a, const BigRational& s) {
  for (auto& v : a.c_) v *= s;
  a.trim();
  return a;
}

std::pair<RatPoly, RatPoly> RatPoly::divmod(const RatPoly& divisor) const {
  if (divisor.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (degree() < divisor.degree()) return {RatPoly(), *this};
  std::vector<BigRational> rem = c_;
  const auto dd = static_cast<std::size_t>(divisor.degree());
  const BigRational lead_inv = BigRational(1) / divisor.leading();
  std::vector<BigRational> q(rem.size() - dd);
  for (std::size_t i = rem.size(); i-- > dd;) {
    if (rem[i].is_zero()) continue;
    const BigRational t = rem[i] * lead_inv;
    q[i - dd] = t;
    for (std::size_t j = 0; j <= dd; ++j) rem[i - dd + j] -= t * divisor.c_[j];
  }
  rem.resize(dd);
  return {RatPoly(std::move(q)), RatPoly(std::move(rem))};
}

std::string RatPoly::to_string(const std::string& var) const { return render(c_, var); }

}  // namespace dormant::exact
