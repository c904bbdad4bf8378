#include "dormant/oper/degrees.hpp"

#include <string>

#include "dormant/errors.hpp"
#include "dormant/exact/number_theory.hpp"
#include "dormant/vi/engine.hpp"

namespace dormant::oper {

using exact::BigInt;

namespace {

std::string s(std::int64_t v) { return std::to_string(v); }

BigRational p_pow_g(std::int64_t p, std::int64_t g) {
  return BigRational(exact::pow(BigInt(p), static_cast<unsigned long>(g)));
}

DegreeResult classify(BigRational v) {
  DegreeResult out;
  out.nonnegative_integer = v.is_integer() && v.sign() >= 0;
  out.value = std::move(v);
  return out;
}

BigRational quot_degree(const OperParams& op, const EvalOptions& opts) {
  if (opts.backend == Backend::floating)
    return vi::vi_degree_float(op.p, op.pushforward_degree, op.r, op.g, opts.precision_bits);
  return vi::vi_degree(op.p, op.pushforward_degree, op.r, op.g, opts.workers);
}

}  // namespace

std::int64_t oper_threshold(std::int64_t r, std::int64_t g) {
  return r * (r - 1) * (r - 2) * (g - 1);
}

std::int64_t canonical_line_degree(std::int64_t r, std::int64_t g) {
  if (r < 1) throw ParameterError("r must be >= 1");
  if (g < 2) throw ParameterError("genus must be >= 2");
  const std::int64_t deg = (1 - r) * (g - 1);
  // deg(L^r (x) K^{r(r-1)/2}) = 0
  if (r * deg + (r * (r - 1) / 2) * (2 * g - 2) != 0)
    throw DomainError("canonical_line_degree: degree condition violated");
  return deg;
}

OperParams OperParams::make(std::int64_t p, std::int64_t r, std::int64_t g) {
  if (r < 2) throw ParameterError("r must be >= 2 (got " + s(r) + ")");
  if (g < 2) throw ParameterError("genus must be >= 2 (got " + s(g) + ")");
  if (!exact::is_prime(p)) throw ParameterError("p=" + s(p) + " is not prime");
  OperParams op;
  op.p = p;
  op.r = r;
  op.g = g;
  op.threshold = oper_threshold(r, g);
  if (p <= op.threshold)
    throw ThresholdError("p=" + s(p) + " violates p > C(r,g): p ≤ C(r,g)=" + s(op.threshold));
  if (p <= r) throw ParameterError("need p > r (got p=" + s(p) + ", r=" + s(r) + ")");
  op.line_degree = canonical_line_degree(r, g);
  op.pushforward_degree = (p - r) * (g - 1);
  return op;
}

PushforwardSlope pushforward_slope_degree(std::int64_t p, std::int64_t deg_line,
                                          std::int64_t g) {
  if (p < 2) throw ParameterError("p must be >= 2");
  PushforwardSlope out;
  out.slope = BigRational(deg_line, p) + BigRational((p - 1) * (g - 1), p);
  const BigRational total = out.slope * BigRational(p);
  out.degree = total.numerator().get_si();
  return out;
}

DegreeResult dormant_degree(std::int64_t p, std::int64_t r, std::int64_t g,
                            const EvalOptions& opts) {
  const OperParams op = OperParams::make(p, r, g);
  return classify(quot_degree(op, opts) / p_pow_g(p, g));
}

DegreeResult sl_oper_degree(std::int64_t p, std::int64_t r, std::int64_t g,
                            const EvalOptions& opts) {
  const DegreeResult base = dormant_degree(p, r, g, opts);
  return classify(base.value *
                  BigRational(exact::pow(BigInt(r), static_cast<unsigned long>(2 * g))));
}

BigRational quot_scale_check(std::int64_t p, std::int64_t r, std::int64_t g,
                             std::int64_t gamma_count, const EvalOptions& opts) {
  const OperParams op = OperParams::make(p, r, g);
  const BigRational kernel_degree = p_pow_g(p, g);
  if (gamma_count != 0 && BigRational(gamma_count) != kernel_degree)
    throw ParameterError("gamma_count must equal deg ker V = p^g = " +
                         kernel_degree.to_string());
  const BigRational full = kernel_degree * dormant_degree(p, r, g, opts).value;
  const BigRational direct = quot_degree(op, opts);
  if (full != direct)
    throw DomainError("quot scale mismatch: " + full.to_string() + " vs " + direct.to_string());
  return full;
}

SubbundleInvariants subbundle_invariants(std::int64_t n, std::int64_t d, std::int64_t r,
                                         std::int64_t g) {
  if (r < 1 || r >= n) throw ParameterError("need 1 <= r < n");
  if (g < 2) throw ParameterError("genus must be >= 2");
  SubbundleInvariants out;
  const std::int64_t base = r * (n - r) * (g - 1);
  out.epsilon = exact::mod_floor(r * d - base, n);
  out.s_r = base + out.epsilon;
  out.mukai_bound = r * (n - r) * g;
  out.e_max = BigRational(d * r - out.s_r, n);
  if (out.s_r > out.mukai_bound)
    throw DomainError("s_r exceeds the Mukai-Sakai bound r(n-r)g");
  return out;
}

BigRational frobenius_fiber_degree(std::int64_t p, std::int64_t r, std::int64_t g,
                                   FiberConvention convention, const EvalOptions& opts) {
  if (!exact::is_prime(p)) throw ParameterError("p=" + s(p) + " is not prime");
  if (r < 1) throw ParameterError("r must be >= 1");
  if (g < 2) throw ParameterError("genus must be >= 2");
  if (r % p == 0) throw ParameterError("need gcd(p, r) = 1");
  const std::int64_t m = p * r;
  // Degree of F_*(V') is r(p-1)(g-1); then b = r(g-1) and the term exponent
  // is (r-1)(g-1).
  const vi::ViParams params = vi::derive_params(m, r * (p - 1) * (g - 1), r, g);

  BigRational prefactor(exact::pow(BigInt(m), static_cast<unsigned long>(r * (g - 1))),
                        exact::pow(BigInt(p), static_cast<unsigned long>(g)));
  if (convention == FiberConvention::with_factorial)
    prefactor /= BigRational(exact::factorial(static_cast<unsigned long>(r)));

  if (opts.backend == Backend::floating) {
    const auto ball = vi::ComplexBall::from_rational(prefactor, opts.precision_bits) *
                      vi::vi_sum_ball(params, opts.precision_bits);
    return vi::round_to_lattice(ball,
                                exact::factorial(static_cast<unsigned long>(r)) * BigInt(m));
  }
  return prefactor * vi::vi_sum_reduced(params, opts.workers).exact;
}

}  // namespace dormant::oper
