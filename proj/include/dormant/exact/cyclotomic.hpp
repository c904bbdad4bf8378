#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dormant/exact/big_rational.hpp"
#include "dormant/exact/polynomial.hpp"

namespace dormant::exact {

/// Phi_m via (x^m - 1) / prod_{d | m, d < m} Phi_d.
IntPoly cyclotomic_polynomial(unsigned m);

/// Q(zeta_m) presented as Q[x] / Phi_m. Instances are immutable and shared.
class CyclotomicField {
 public:
  /// Interned instance for conductor m; thread-safe. Throws ParameterError
  /// for m == 0.
  static std::shared_ptr<const CyclotomicField> get(unsigned m);

  unsigned conductor() const { return m_; }
  /// phi(m) == degree of Phi_m == length of every coefficient vector.
  std::size_t degree() const { return phi_; }
  const IntPoly& modulus() const { return modulus_; }
  bool prime_conductor() const { return prime_; }

  /// Reduces an integer coefficient vector of any length modulo Phi_m in
  /// place; on return it has exactly degree() entries.
  void reduce(std::vector<BigInt>& c) const;

  explicit CyclotomicField(unsigned m);

 private:
  unsigned m_;
  std::size_t phi_;
  IntPoly modulus_;
  bool prime_;
};

/// Element of Q(zeta_m): rational coefficients on 1, zeta, ..., zeta^{phi-1}.
class CycloElt {
 public:
  static CycloElt zero(unsigned m);
  static CycloElt one(unsigned m);
  static CycloElt constant(unsigned m, const BigRational& c);
  /// zeta_m^k for any integer k (negative allowed).
  static CycloElt zeta_power(unsigned m, std::int64_t k);
  /// Interprets coeffs as a polynomial in zeta of any length and reduces it.
  static CycloElt from_coefficients(unsigned m, std::span<const BigRational> coeffs);

  unsigned conductor() const { return field_->conductor(); }
  const CyclotomicField& field() const { return *field_; }
  const std::vector<BigRational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;

  CycloElt operator-() const;
  CycloElt& operator+=(const CycloElt& o);
  CycloElt& operator-=(const CycloElt& o);
  CycloElt& operator*=(const CycloElt& o);
  friend CycloElt operator+(CycloElt a, const CycloElt& b) { return a += b; }
  friend CycloElt operator-(CycloElt a, const CycloElt& b) { return a -= b; }
  friend CycloElt operator*(CycloElt a, const CycloElt& b) { return a *= b; }
  CycloElt scaled(const BigRational& s) const;

  friend bool operator==(const CycloElt& a, const CycloElt& b) {
    return a.conductor() == b.conductor() && a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const;

 private:
  CycloElt(std::shared_ptr<const CyclotomicField> f, std::vector<BigRational> c)
      : field_(std::move(f)), coeffs_(std::move(c)) {}
  void require_same_field(const CycloElt& o) const;

  std::shared_ptr<const CyclotomicField> field_;
  std::vector<BigRational> coeffs_;
};

CycloElt cyclo_mul(const CycloElt& u, const CycloElt& v);

/// Inverse by the extended Euclidean algorithm on (u, Phi_m) over Q[x].
/// Throws DivisionByZero for u == 0.
CycloElt cyclo_invert(const CycloElt& u);

/// Integer power; negative exponents go through cyclo_invert.
CycloElt pow(const CycloElt& u, std::int64_t exponent);

/// The rational value of u; IrrationalError unless u lies in Q.
BigRational as_rational(const CycloElt& u);

}  // namespace dormant::exact
