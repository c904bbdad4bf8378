#include "dormant/verlinde/verlinde.hpp"

#include <algorithm>

#include "dormant/errors.hpp"
#include "dormant/oper/degrees.hpp"

namespace dormant::verlinde {

namespace {

IntMatrix zeros(std::size_t n) { return IntMatrix(n, std::vector<BigInt>(n, BigInt(0))); }

IntMatrix identity(std::size_t n) {
  IntMatrix m = zeros(n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

void add_into(IntMatrix& acc, const IntMatrix& m, const BigInt& scale = BigInt(1)) {
  for (std::size_t i = 0; i < acc.size(); ++i)
    for (std::size_t j = 0; j < acc.size(); ++j) acc[i][j] += scale * m[i][j];
}

}  // namespace

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix c = zeros(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < n; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][t] * b[t][j];
    }
  return c;
}

bool fusion_associative(const FusionRing& ring) {
  const std::size_t n = ring.basis_size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix rhs = zeros(n);
      for (std::size_t l = 0; l < n; ++l)
        if (ring.matrices[i][j][l] != 0) add_into(rhs, ring.matrices[l], ring.matrices[i][j][l]);
      if (multiply(ring.matrices[i], ring.matrices[j]) != rhs) return false;
    }
  return true;
}

FusionRing su2_fusion_matrices(std::int64_t k) {
  if (k < 0) throw ParameterError("level must be >= 0");
  const auto n = static_cast<std::size_t>(k + 1);
  FusionRing ring;
  ring.level = k;
  ring.matrices.assign(n, zeros(n));
  for (std::int64_t i = 0; i <= k; ++i)
    for (std::int64_t j = 0; j <= k; ++j) {
      const std::int64_t hi = std::min(i + j, 2 * k - i - j);
      for (std::int64_t l = std::abs(i - j); l <= hi; ++l)
        if ((i + j + l) % 2 == 0) ring.matrices[i][j][l] = 1;
    }
  if (k <= 6 && !fusion_associative(ring))
    throw DomainError("su2 fusion rules at level " + std::to_string(k) + " are not associative");
  return ring;
}

BigInt verlinde_dim_fusion(std::int64_t k, std::int64_t g) {
  if (g < 1) throw ParameterError("genus must be >= 1");
  const FusionRing ring = su2_fusion_matrices(k);
  const std::size_t n = ring.basis_size();
  IntMatrix handle = zeros(n);
  for (const auto& m : ring.matrices) add_into(handle, multiply(m, m));
  IntMatrix acc = identity(n);
  for (std::int64_t e = 1; e < g; ++e) acc = multiply(acc, handle);
  BigInt trace = 0;
  for (std::size_t i = 0; i < n; ++i) trace += acc[i][i];
  return trace;
}

BigInt verlinde_dim_trig(std::int64_t r, std::int64_t k, std::int64_t g,
                         mpfr_prec_t precision_bits) {
  if (r < 2) throw ParameterError("rank must be >= 2");
  if (k < 0) throw ParameterError("level must be >= 0");
  if (g < 1) throw ParameterError("genus must be >= 1");
  using vi::ComplexBall;
  const std::int64_t h = k + r;

  // Per-difference factor (2 sin(pi t / h))^{2-2g} for t = 1..h-1.
  std::vector<ComplexBall> factor;
  factor.reserve(static_cast<std::size_t>(h));
  factor.emplace_back(precision_bits);
  const ComplexBall two = ComplexBall::from_rational(BigRational(2), precision_bits);
  for (std::int64_t t = 1; t < h; ++t)
    factor.push_back(
        pow(two * ComplexBall::sin_pi_fraction(t, h, precision_bits), 2 - 2 * g));

  // a_1 > ... > a_{r-1} drawn from {1, ..., h-1}; a_r = 0.
  std::vector<std::int64_t> a(static_cast<std::size_t>(r), 0);
  for (std::int64_t i = 0; i + 1 < r; ++i) a[i] = r - 1 - i;
  ComplexBall total(precision_bits);
  const ComplexBall one = ComplexBall::from_rational(BigRational(1), precision_bits);
  while (true) {
    ComplexBall term = one;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = i + 1; j < a.size(); ++j) term *= factor[a[i] - a[j]];
    total += term;
    // next strictly decreasing sequence: bump the lowest movable entry
    std::int64_t pos = r - 2;
    while (pos >= 0) {
      const std::int64_t cap = pos == 0 ? h - 1 : a[pos - 1] - 1;
      if (a[pos] < cap) break;
      --pos;
    }
    if (pos < 0) break;
    ++a[pos];
    for (std::int64_t i = pos + 1; i + 1 < r; ++i) a[i] = r - 1 - i;
  }

  const BigInt base = BigInt(r) * exact::pow(BigInt(h), static_cast<unsigned long>(r - 1));
  const BigRational scale(exact::pow(base, static_cast<unsigned long>(g - 1)));
  return vi::round_to_integer(ComplexBall::from_rational(scale, precision_bits) * total);
}

EquivalenceReport check_verlinde_equivalence(std::int64_t p, std::int64_t r, std::int64_t g,
                                             mpfr_prec_t precision_bits) {
  EquivalenceReport out;
  out.lhs = oper::dormant_degree(p, r, g).value;
  if (r == 2) {
    out.method = VerlindeMethod::fusion;
    out.verlinde_dimension = verlinde_dim_fusion(p - r, g);
  } else {
    out.method = VerlindeMethod::trig;
    out.conjectural = true;
    out.verlinde_dimension = verlinde_dim_trig(r, p - r, g, precision_bits);
  }
  out.rhs = BigRational(out.verlinde_dimension,
                        exact::pow(BigInt(r), static_cast<unsigned long>(g)));
  out.equal = out.lhs == out.rhs;
  return out;
}

}  // namespace dormant::verlinde
