#pragma once

#include <cstdint>

#include "dormant/exact/big_rational.hpp"
#include "dormant/vi/ball.hpp"

namespace dormant::oper {

using exact::BigRational;

/// Validated (p, r, g) for dormant PGL(r)-opers together with the integers
/// the degree formula is built from.
struct OperParams {
  std::int64_t p = 0;
  std::int64_t r = 0;
  std::int64_t g = 0;
  std::int64_t threshold = 0;          // r(r-1)(r-2)(g-1)
  std::int64_t line_degree = 0;        // (1-r)(g-1)
  std::int64_t pushforward_degree = 0; // (p-r)(g-1)

  /// Throws ParameterError (p not prime, r < 2, g < 2, p <= r) or
  /// ThresholdError (p <= C(r,g)).
  static OperParams make(std::int64_t p, std::int64_t r, std::int64_t g);
};

/// r(r-1)(r-2)(g-1)
std::int64_t oper_threshold(std::int64_t r, std::int64_t g);

/// Degree of L with L^r (x) K^{r(r-1)/2} trivial: (1-r)(g-1).
std::int64_t canonical_line_degree(std::int64_t r, std::int64_t g);

struct PushforwardSlope {
  BigRational slope;        // deg(L)/p + (p-1)(g-1)/p
  std::int64_t degree = 0;  // slope * p
};

/// Slope and degree of the Frobenius pushforward of a line bundle of degree
/// `deg_line` (rank p). g = 1 is accepted here.
PushforwardSlope pushforward_slope_degree(std::int64_t p, std::int64_t deg_line,
                                          std::int64_t g);

struct DegreeResult {
  BigRational value;
  bool nonnegative_integer = false;
};

enum class Backend { exact, floating };

/// Options shared by the formula layer.
struct EvalOptions {
  Backend backend = Backend::exact;
  mpfr_prec_t precision_bits = 192;
  unsigned workers = 1;
};

/// Conjectural degree of the dormant locus: N(p, (p-r)(g-1), r, g) / p^g.
DegreeResult dormant_degree(std::int64_t p, std::int64_t r, std::int64_t g,
                            const EvalOptions& opts = {});

/// r^{2g} * dormant_degree: the SL(r) version.
DegreeResult sl_oper_degree(std::int64_t p, std::int64_t r, std::int64_t g,
                            const EvalOptions& opts = {});

/// Degree of the full Quot scheme, p^g * dormant_degree. Cross-checks the
/// value against N(p, (p-r)(g-1), r, g) computed directly and throws
/// DomainError on mismatch. `gamma_count` defaults to p^g (the degree of
/// ker V on the Jacobian); any other value must match it.
BigRational quot_scale_check(std::int64_t p, std::int64_t r, std::int64_t g,
                             std::int64_t gamma_count = 0, const EvalOptions& opts = {});

struct SubbundleInvariants {
  std::int64_t mukai_bound = 0;  // r(n-r)g
  std::int64_t s_r = 0;          // r(n-r)(g-1) + epsilon
  std::int64_t epsilon = 0;      // in [0, n), s_r == r d (mod n)
  BigRational e_max;             // (d r - s_r) / n
};

/// Maximal-subbundle numerics of a general bundle of rank n and degree d.
/// Requires 1 <= r < n and g >= 2.
SubbundleInvariants subbundle_invariants(std::int64_t n, std::int64_t d, std::int64_t r,
                                         std::int64_t g);

enum class FiberConvention { as_written, with_factorial };

/// (pr)^{r(g-1)} / p^g times the ordered-tuple sum over distinct pr-th roots
/// of unity of (prod zeta_i)^{(r-1)(g-1)} / prod_{i != j}(zeta_i - zeta_j)^{g-1}.
/// `with_factorial` additionally divides by r!.
BigRational frobenius_fiber_degree(std::int64_t p, std::int64_t r, std::int64_t g,
                                   FiberConvention convention = FiberConvention::as_written,
                                   const EvalOptions& opts = {});

}  // namespace dormant::oper
