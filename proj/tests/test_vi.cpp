#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "dormant/errors.hpp"
#include "dormant/vi/engine.hpp"
#include "oracles.hpp"

using namespace dormant;
using namespace dormant::vi;
using exact::BigInt;
using exact::BigRational;
using exact::CycloElt;

namespace {

BigRational q(long n, long d = 1) { return BigRational(BigInt(n), BigInt(d)); }

std::vector<CycloElt> roots_of(unsigned n, std::initializer_list<int> exps) {
  std::vector<CycloElt> out;
  for (int e : exps) out.push_back(CycloElt::zeta_power(n, e));
  return out;
}

}  // namespace

TEST_CASE("derive_params") {
  auto p = derive_params(5, 3, 2, 2);
  CHECK(p.a == 1);
  CHECK(p.b == 2);
  CHECK(p.term_exponent == 1);
  REQUIRE(p.sign_valid());
  CHECK(*p.sign_exponent == 0);
  CHECK(p.rotation_character == 0);

  p = derive_params(7, 5, 2, 2);
  CHECK(p.a == 1);
  CHECK(p.b == 2);
  CHECK(p.term_exponent == 1);
  CHECK(*p.sign_exponent == 0);

  p = derive_params(5, 0, 2, 2);
  CHECK(p.a == 0);
  CHECK(p.b == 0);
  CHECK(p.term_exponent == -1);

  p = derive_params(5, -3, 2, 2);
  CHECK(p.a == 0);
  CHECK(p.b == 3);
  CHECK(p.n * p.a - p.b == -3);

  CHECK_THROWS_AS(derive_params(3, 0, 4, 2), ParameterError);
  CHECK_THROWS_AS(derive_params(3, 0, 2, 1), ParameterError);
  CHECK_THROWS_AS(derive_params(0, 0, 1, 2), ParameterError);

  // (r-1)(b r - (g-1) r^2) = 1 * (2*1 - 4) = -2, not divisible by 5.
  p = derive_params(5, 4, 2, 2);
  CHECK_FALSE(p.sign_valid());
  CHECK_THROWS_AS(vi_degree(5, 4, 2, 2), DomainError);
}

TEST_CASE("sign exponent vanishes in the dormant parameterization") {
  for (std::int64_t n : {5, 7, 11, 13})
    for (std::int64_t r : {1, 2, 3})
      for (std::int64_t g : {2, 3, 4}) {
        if (r * (g - 1) >= n) continue;  // b = r(g-1) needs r(g-1) < n
        const auto p = derive_params(n, (n - r) * (g - 1), r, g);
        CHECK(p.b == r * (g - 1));
        CHECK(p.a == g - 1);
        REQUIRE(p.sign_valid());
        CHECK(*p.sign_exponent == 0);
      }
}

TEST_CASE("vi_term examples") {
  const auto p5 = derive_params(5, 3, 2, 2);
  const CycloElt z = CycloElt::zeta_power(5, 1);
  const CycloElt one = CycloElt::one(5);
  const CycloElt expected = -z * exact::cyclo_invert((one - z) * (one - z));
  CHECK(vi_term(roots_of(5, {0, 1}), p5) == expected);

  const auto p2 = derive_params(2, 0, 2, 2);
  auto p2e = p2;
  p2e.term_exponent = 1;
  CHECK(exact::as_rational(vi_term(roots_of(2, {0, 1}), p2e)) == q(1, 4));

  for (std::int64_t n : {3, 5, 6}) {
    const auto p1 = derive_params(n, 2, 1, 3);
    for (int k = 0; k < n; ++k)
      CHECK(vi_term(roots_of(static_cast<unsigned>(n), {k}), p1) ==
            pow(CycloElt::zeta_power(static_cast<unsigned>(n), k), p1.term_exponent));
  }

  CHECK_THROWS_AS(vi_term(roots_of(5, {1, 1}), p5), DivisionByZero);
  CHECK_THROWS_AS(vi_term(roots_of(7, {0, 1}), p5), ParameterError);
}

TEST_CASE("vi_sum_naive examples") {
  auto s = vi_sum_naive(derive_params(5, 3, 2, 2));
  CHECK(s.exact == 10);
  CHECK(s.terms_evaluated == 20);
  CHECK(s.reduction == Reduction::naive);
  // csc^2 oracle: 5 * (1/4) * (25-1)/3
  CHECK(std::abs(static_cast<double>(oracle::rank2_pair_sum(5, 2)) - 10.0) < 1e-12);

  CHECK(vi_sum_naive(derive_params(2, 0, 2, 2)).exact == q(1, 2));

  const auto p3 = derive_params(3, 0, 2, 2);
  REQUIRE(p3.rotation_character != 0);
  CHECK(vi_sum_naive(p3).exact == 0);

  CHECK_THROWS_AS(vi_sum_naive(derive_params(11, 9, 2, 2)), SizeError);
  CHECK(vi_sum_naive(derive_params(11, 9, 2, 2), {.max_n = 11, .max_r = 2}).exact == 110);
}

TEST_CASE("vi_sum_reduced examples") {
  auto s = vi_sum_reduced(derive_params(5, 3, 2, 2));
  CHECK(s.exact == 10);
  CHECK(s.terms_evaluated == 4);
  CHECK(s.reduction == Reduction::rotation_and_permutation);

  s = vi_sum_reduced(derive_params(7, 5, 2, 2));
  CHECK(s.exact == 28);
  CHECK(std::abs(static_cast<double>(oracle::rank2_pair_sum(7, 2)) - 28.0) < 1e-12);

  s = vi_sum_reduced(derive_params(3, 0, 2, 2));
  CHECK(s.exact == 0);
  CHECK(s.terms_evaluated == 0);
}

TEST_CASE("vi_sum_reduced is independent of worker count") {
  const auto p = derive_params(13, 30, 3, 3);
  const auto one = vi_sum_reduced(p, 1);
  for (unsigned w : {2u, 3u, 5u}) {
    const auto many = vi_sum_reduced(p, w);
    CHECK(many.exact == one.exact);
    CHECK(many.terms_evaluated == one.terms_evaluated);
  }
}

TEST_CASE("oracle equivalence and rationality on the desk grid") {
  for (std::int64_t n = 1; n <= 7; ++n)
    for (std::int64_t r = 1; r <= 3 && r <= n; ++r)
      for (std::int64_t d = -3; d <= 3; ++d)
        for (std::int64_t g = 2; g <= 3; ++g) {
          const auto p = derive_params(n, d, r, g);
          SumValue naive;
          REQUIRE_NOTHROW(naive = vi_sum_naive(p));
          const auto reduced = vi_sum_reduced(p);
          CHECK_MESSAGE(naive.exact == reduced.exact, p.describe());
          if (p.rotation_character != 0) CHECK(naive.exact == 0);
        }
}

TEST_CASE("vi_term permutation symmetry and rotation covariance") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::int64_t n = std::uniform_int_distribution<std::int64_t>(3, 9)(rng);
    const std::int64_t r = std::uniform_int_distribution<std::int64_t>(1, std::min<std::int64_t>(n, 3))(rng);
    const std::int64_t g = std::uniform_int_distribution<std::int64_t>(2, 3)(rng);
    const std::int64_t d = std::uniform_int_distribution<std::int64_t>(-5, 5)(rng);
    const auto p = derive_params(n, d, r, g);
    const auto un = static_cast<unsigned>(n);

    std::vector<int> exps(n);
    for (int i = 0; i < n; ++i) exps[i] = i;
    std::shuffle(exps.begin(), exps.end(), rng);
    exps.resize(r);
    std::vector<CycloElt> tuple;
    for (int e : exps) tuple.push_back(CycloElt::zeta_power(un, e));
    const CycloElt base = vi_term(tuple, p);

    auto perm = tuple;
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(vi_term(perm, p) == base);

    const int shift = std::uniform_int_distribution<int>(0, static_cast<int>(n) - 1)(rng);
    const CycloElt zeta = CycloElt::zeta_power(un, shift);
    std::vector<CycloElt> rotated;
    for (const auto& x : tuple) rotated.push_back(zeta * x);
    CHECK(vi_term(rotated, p) == pow(zeta, p.rotation_character) * base);
  }
}

TEST_CASE("vi_degree examples") {
  CHECK(vi_degree(5, 3, 2, 2) == 125);
  CHECK(vi_degree(2, 0, 2, 2) == 1);
  CHECK(vi_degree(7, 5, 2, 2) == 686);
  CHECK(vi_prefactor(derive_params(2, 0, 2, 2)) == 2);
}

TEST_CASE("vi_degree_float examples") {
  CHECK(vi_degree_float(5, 3, 2, 2, 128) == 125);
  CHECK(vi_degree_float(7, 5, 2, 2, 128) == 686);
  CHECK_THROWS_AS(vi_degree_float(5, 3, 2, 2, 4), PrecisionError);
}

TEST_CASE("backend agreement on the desk grid at 192 bits") {
  for (std::int64_t n = 1; n <= 7; ++n)
    for (std::int64_t r = 1; r <= 3 && r <= n; ++r)
      for (std::int64_t d = -3; d <= 3; ++d)
        for (std::int64_t g = 2; g <= 3; ++g) {
          const auto p = derive_params(n, d, r, g);
          if (!p.sign_valid()) continue;
          const auto exact_value = vi_degree(n, d, r, g);
          CHECK_MESSAGE(vi_degree_float(n, d, r, g, 192) == exact_value, p.describe());
          const auto both = vi_sum_crosschecked(p, 192);
          CHECK(ball_contains(*both.float_estimate, both.exact));
        }
}
