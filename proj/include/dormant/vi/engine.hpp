#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "dormant/exact/big_rational.hpp"
#include "dormant/exact/cyclotomic.hpp"
#include "dormant/vi/ball.hpp"
#include "dormant/vi/params.hpp"

namespace dormant::vi {

enum class Reduction { naive, rotation_and_permutation };

std::string_view to_string(Reduction r);

/// Value of the tuple sum
///   sum over ordered r-tuples of distinct n-th roots of unity of
///   (prod rho_i)^{b-g+1} / prod_{i != j} (rho_i - rho_j)^{g-1}.
struct SumValue {
  exact::BigRational exact;
  std::optional<ComplexBall> float_estimate;
  std::uint64_t terms_evaluated = 0;
  Reduction reduction = Reduction::naive;
};

/// Bounds for the brute-force oracle.
struct EnumerationCap {
  std::int64_t max_n = 7;
  std::int64_t max_r = 3;
};

/// One summand. `tuple` holds r distinct roots, all of conductor n. The
/// denominator runs over ordered pairs, so for r = 2 it is -(rho_1-rho_2)^2.
/// A repeated root surfaces as DivisionByZero.
exact::CycloElt vi_term(std::span<const exact::CycloElt> tuple, const ViParams& params);

/// Brute force over every ordered tuple; SizeError beyond `cap`.
SumValue vi_sum_naive(const ViParams& params, EnumerationCap cap = {});

/// Rotation- and permutation-reduced evaluation:
///   0 when the rotation character is nonzero, otherwise
///   n (r-1)! * sum over (r-1)-subsets S of the non-identity roots of
///   term({1} u S).
/// Splits the subsets across `workers` threads (0 = hardware concurrency);
/// the result does not depend on the worker count.
SumValue vi_sum_reduced(const ViParams& params, unsigned workers = 1);

/// Brute-force ordered-tuple sum in certified complex ball arithmetic.
/// Shares no code with the exact path beyond ViParams.
ComplexBall vi_sum_ball(const ViParams& params, mpfr_prec_t precision_bits,
                        std::uint64_t* terms_evaluated = nullptr);

/// Runs both backends and checks that the exact value lies in the ball.
SumValue vi_sum_crosschecked(const ViParams& params, mpfr_prec_t precision_bits);

/// (-1)^{sign_exponent} n^{r(g-1)} / r!; DomainError if sign-invalid.
exact::BigRational vi_prefactor(const ViParams& params);

/// N(n, d, r, g) from the reduced exact sum. DomainError when the sign
/// exponent is not an integer.
exact::BigRational vi_degree(std::int64_t n, std::int64_t d, std::int64_t r, std::int64_t g,
                             unsigned workers = 1);

/// N(n, d, r, g) from the ball backend, rounded to the unique multiple of
/// 1/(r! n) within the error bound; PrecisionError otherwise.
exact::BigRational vi_degree_float(std::int64_t n, std::int64_t d, std::int64_t r,
                                   std::int64_t g, mpfr_prec_t precision_bits);

/// True if the rational q lies within the ball.
bool ball_contains(const ComplexBall& ball, const exact::BigRational& q);

}  // namespace dormant::vi
