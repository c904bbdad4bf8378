#include "dormant/exact/cyclotomic.hpp"

#include <map>
#include <mutex>

#include "dormant/errors.hpp"
#include "dormant/exact/number_theory.hpp"

namespace dormant::exact {

IntPoly cyclotomic_polynomial(unsigned m) {
  if (m == 0) throw ParameterError("cyclotomic_polynomial: conductor must be >= 1");
  IntPoly denom({BigInt(1)});
  for (auto d : divisors(m)) {
    if (d == m) break;
    denom = denom * cyclotomic_polynomial(static_cast<unsigned>(d));
  }
  return IntPoly::x_pow_minus_one(m).divide_exact(denom);
}

CyclotomicField::CyclotomicField(unsigned m)
    : m_(m),
      phi_(euler_phi(m)),
      modulus_(cyclotomic_polynomial(m)),
      prime_(is_prime(m)) {}

std::shared_ptr<const CyclotomicField> CyclotomicField::get(unsigned m) {
  if (m == 0) throw ParameterError("conductor must be >= 1");
  static std::mutex mu;
  static std::map<unsigned, std::shared_ptr<const CyclotomicField>> registry;
  std::lock_guard lock(mu);
  auto it = registry.find(m);
  if (it != registry.end()) return it->second;
  auto f = std::make_shared<const CyclotomicField>(m);
  registry.emplace(m, f);
  return f;
}

void CyclotomicField::reduce(std::vector<BigInt>& c) const {
  if (prime_) {
    // x^m = 1, then x^{m-1} = -(1 + x + ... + x^{m-2}).
    if (c.size() > m_) {
      for (std::size_t i = m_; i < c.size(); ++i) c[i % m_] += c[i];
      c.resize(m_);
    }
    c.resize(m_, BigInt(0));
    const BigInt top = c[m_ - 1];
    if (top != 0)
      for (std::size_t j = 0; j + 1 < m_; ++j) c[j] -= top;
    c.resize(phi_);
    return;
  }
  const auto& phi = modulus_.coeffs();
  for (std::size_t i = c.size(); i-- > phi_;) {
    const BigInt t = c[i];
    if (t == 0) continue;
    for (std::size_t j = 0; j <= phi_; ++j) c[i - phi_ + j] -= t * phi[j];
  }
  c.resize(phi_, BigInt(0));
}

namespace {

// Clears denominators: returns integer coefficients and their common scale.
std::vector<BigInt> integerize(const std::vector<BigRational>& c, BigInt& scale) {
  scale = 1;
  for (const auto& v : c)
    if (!v.is_zero()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.raw().get_den_mpz_t());
  std::vector<BigInt> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_zero()) continue;
    out[i] = c[i].raw().get_num() * (scale / c[i].raw().get_den());
  }
  return out;
}

std::vector<BigRational> rescale(const std::vector<BigInt>& c, const BigInt& scale) {
  std::vector<BigRational> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) out[i] = BigRational(c[i], scale);
  return out;
}

}  // namespace

CycloElt CycloElt::zero(unsigned m) {
  auto f = CyclotomicField::get(m);
  std::vector<BigRational> c(f->degree());
  return CycloElt(std::move(f), std::move(c));
}

CycloElt CycloElt::one(unsigned m) { return constant(m, BigRational(1)); }

CycloElt CycloElt::constant(unsigned m, const BigRational& v) {
  CycloElt out = zero(m);
  out.coeffs_[0] = v;
  return out;
}

CycloElt CycloElt::zeta_power(unsigned m, std::int64_t k) {
  auto f = CyclotomicField::get(m);
  auto e = static_cast<std::size_t>(mod_floor(k, m));
  std::vector<BigInt> c(std::max(e + 1, f->degree()), BigInt(0));
  c[e] = 1;
  f->reduce(c);
  return CycloElt(f, rescale(c, BigInt(1)));
}

CycloElt CycloElt::from_coefficients(unsigned m, std::span<const BigRational> coeffs) {
  auto f = CyclotomicField::get(m);
  BigInt scale;
  std::vector<BigInt> c = integerize({coeffs.begin(), coeffs.end()}, scale);
  f->reduce(c);
  return CycloElt(f, rescale(c, scale));
}

bool CycloElt::is_zero() const {
  for (const auto& v : coeffs_)
    if (!v.is_zero()) return false;
  return true;
}

bool CycloElt::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) return false;
  return true;
}

void CycloElt::require_same_field(const CycloElt& o) const {
  if (conductor() != o.conductor())
    throw ParameterError("conductor mismatch: " + std::to_string(conductor()) + " vs " +
                         std::to_string(o.conductor()));
}

CycloElt CycloElt::operator-() const {
  CycloElt out = *this;
  for (auto& v : out.coeffs_) v = -v;
  return out;
}

CycloElt& CycloElt::operator+=(const CycloElt& o) {
  require_same_field(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CycloElt& CycloElt::operator-=(const CycloElt& o) {
  require_same_field(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

CycloElt& CycloElt::operator*=(const CycloElt& o) {
  require_same_field(o);
  BigInt su, sv;
  const auto a = integerize(coeffs_, su);
  const auto b = integerize(o.coeffs_, sv);
  const std::size_t n = a.size();
  std::vector<BigInt> prod(2 * n - 1, BigInt(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (b[j] != 0) mpz_addmul(prod[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  field_->reduce(prod);
  coeffs_ = rescale(prod, su * sv);
  return *this;
}

CycloElt CycloElt::scaled(const BigRational& s) const {
  CycloElt out = *this;
  for (auto& v : out.coeffs_) v *= s;
  return out;
}

std::string CycloElt::to_string() const {
  return RatPoly(coeffs_).to_string("z" + std::to_string(conductor()));
}

CycloElt cyclo_mul(const CycloElt& u, const CycloElt& v) { return u * v; }

CycloElt cyclo_invert(const CycloElt& u) {
  if (u.is_zero()) throw DivisionByZero("cyclo_invert: zero has no inverse");
  const unsigned m = u.conductor();
  // Invariant: s_i * u == r_i (mod Phi_m).
  RatPoly r0(u.field().modulus()), r1(u.coeffs());
  RatPoly s0, s1 = RatPoly::constant(BigRational(1));
  while (r1.degree() > 0) {
    auto [q, rem] = r0.divmod(r1);
    RatPoly s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.is_zero())
    throw DomainError("cyclo_invert: gcd with cyclotomic modulus is not constant");
  RatPoly inv = s1 * (BigRational(1) / r1.coeff(0));
  return CycloElt::from_coefficients(m, inv.coeffs());
}

CycloElt pow(const CycloElt& u, std::int64_t exponent) {
  CycloElt base = exponent < 0 ? cyclo_invert(u) : u;
  auto e = static_cast<std::uint64_t>(exponent < 0 ? -exponent : exponent);
  CycloElt acc = CycloElt::one(u.conductor());
  while (e) {
    if (e & 1) acc *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return acc;
}

BigRational as_rational(const CycloElt& u) {
  if (!u.is_rational())
    throw IrrationalError("expected a rational value, got " + u.to_string());
  return u.coeffs()[0];
}

}  // namespace dormant::exact
