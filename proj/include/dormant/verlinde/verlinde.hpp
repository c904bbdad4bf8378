#pragma once

#include <cstdint>
#include <vector>

#include "dormant/exact/big_rational.hpp"
#include "dormant/vi/ball.hpp"

namespace dormant::verlinde {

using exact::BigInt;
using exact::BigRational;

using IntMatrix = std::vector<std::vector<BigInt>>;

/// SU(2) level-k fusion ring on the integrable weights 0..k.
struct FusionRing {
  std::int64_t level = 0;
  /// matrices[i][j][l] = N_{ij}^l, in {0, 1}.
  std::vector<IntMatrix> matrices;

  std::size_t basis_size() const { return matrices.size(); }
};

/// N_{ij}^l = 1 iff |i-j| <= l <= min(i+j, 2k-i-j) and i+j+l is even.
/// For k <= 6 also checks N_i N_j = sum_l N_{ij}^l N_l.
FusionRing su2_fusion_matrices(std::int64_t k);

/// Fusion-ring associativity N_i N_j = sum_l (N_i)_{jl} N_l.
bool fusion_associative(const FusionRing& ring);

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

/// Tr((sum_i N_i^2)^{g-1}) in exact integers.
BigInt verlinde_dim_fusion(std::int64_t k, std::int64_t g);

/// (r (k+r)^{r-1})^{g-1} times the sum over k+r > a_1 > ... > a_r = 0 of
/// prod_{i<j} (2 sin(pi (a_i - a_j)/(k+r)))^{2-2g}, evaluated in ball
/// arithmetic and rounded to the integer within 1/4. PrecisionError otherwise.
BigInt verlinde_dim_trig(std::int64_t r, std::int64_t k, std::int64_t g,
                         mpfr_prec_t precision_bits = 192);

enum class VerlindeMethod { fusion, trig };

struct EquivalenceReport {
  BigRational lhs;           // dormant degree
  BigInt verlinde_dimension;
  BigRational rhs;           // verlinde_dimension / r^g
  bool equal = false;
  VerlindeMethod method = VerlindeMethod::fusion;
  /// r >= 3: the equality is a conjecture, not a theorem.
  bool conjectural = false;
};

/// Compares the dormant degree at (p, r, g) with r^{-g} dim H^0(SU_X(r), theta^{p-r}).
/// Uses the fusion oracle for r = 2 and the trigonometric sum otherwise.
EquivalenceReport check_verlinde_equivalence(std::int64_t p, std::int64_t r, std::int64_t g,
                                             mpfr_prec_t precision_bits = 192);

}  // namespace dormant::verlinde
