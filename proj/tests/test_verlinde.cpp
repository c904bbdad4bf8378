#include <doctest.h>

#include <cmath>

#include "dormant/errors.hpp"
#include "dormant/verlinde/verlinde.hpp"
#include "oracles.hpp"

using namespace dormant;
using namespace dormant::verlinde;

TEST_CASE("su2_fusion_matrices") {
  for (std::int64_t k = 0; k <= 8; ++k) {
    const auto ring = su2_fusion_matrices(k);
    REQUIRE(ring.basis_size() == static_cast<std::size_t>(k + 1));
    for (std::size_t j = 0; j <= static_cast<std::size_t>(k); ++j)
      for (std::size_t l = 0; l <= static_cast<std::size_t>(k); ++l)
        CHECK(ring.matrices[0][j][l] == (j == l ? 1 : 0));
    for (const auto& m : ring.matrices)
      for (std::size_t a = 0; a < m.size(); ++a)
        for (std::size_t b = 0; b < m.size(); ++b) {
          CHECK(m[a][b] == m[b][a]);
          CHECK((m[a][b] == 0 || m[a][b] == 1));
        }
  }
  const auto k1 = su2_fusion_matrices(1);
  CHECK(k1.matrices[1] == IntMatrix{{0, 1}, {1, 0}});
  const auto k2 = su2_fusion_matrices(2);
  CHECK(k2.matrices[1][0][1] == 1);
  CHECK(k2.matrices[1][1][0] == 1);
  CHECK(k2.matrices[1][1][2] == 1);
  CHECK(k2.matrices[1][2][1] == 1);
  CHECK(k2.matrices[1][1][1] == 0);
  CHECK_THROWS_AS(su2_fusion_matrices(-1), ParameterError);
}

TEST_CASE("fusion associativity for k <= 6") {
  for (std::int64_t k = 0; k <= 6; ++k) CHECK(fusion_associative(su2_fusion_matrices(k)));
}

TEST_CASE("verlinde_dim_fusion examples") {
  CHECK(verlinde_dim_fusion(1, 2) == 4);
  CHECK(verlinde_dim_fusion(3, 2) == 20);
  CHECK(oracle::su2_admissible_triples(3) == 20);
  for (std::int64_t k = 0; k <= 7; ++k) CHECK(verlinde_dim_fusion(k, 1) == k + 1);
  for (std::int64_t g = 1; g <= 5; ++g)
    CHECK(verlinde_dim_fusion(1, g) == exact::pow(BigInt(2), static_cast<unsigned long>(g)));
  for (std::int64_t k = 0; k <= 8; ++k)
    CHECK(verlinde_dim_fusion(k, 2) == oracle::su2_admissible_triples(k));
}

TEST_CASE("verlinde_dim_fusion matches the SU(2) sine formula") {
  for (std::int64_t k = 0; k <= 11; ++k)
    for (int g = 1; g <= 4; ++g) {
      const double expected = std::round(static_cast<double>(oracle::su2_verlinde(k, g)));
      CHECK(verlinde_dim_fusion(k, g).get_d() == expected);
    }
}

TEST_CASE("verlinde_dim_trig examples") {
  CHECK(verlinde_dim_trig(2, 3, 2) == 20);
  CHECK(verlinde_dim_trig(2, 1, 3) == 8);
  CHECK(verlinde_dim_trig(3, 2, 1) == 6);
  CHECK_THROWS_AS(verlinde_dim_trig(2, 3, 2, 4), PrecisionError);
  CHECK_THROWS_AS(verlinde_dim_trig(1, 3, 2), ParameterError);
}

TEST_CASE("fusion and trig agree; genus one counts weights") {
  for (std::int64_t k = 0; k <= 6; ++k)
    for (std::int64_t g = 1; g <= 4; ++g) CHECK(verlinde_dim_trig(2, k, g) == verlinde_dim_fusion(k, g));
  for (std::int64_t r : {2, 3, 4})
    for (std::int64_t k = 0; k <= 5; ++k)
      CHECK(verlinde_dim_trig(r, k, 1) ==
            exact::binomial(static_cast<unsigned long>(k + r - 1), static_cast<unsigned long>(r - 1)));
}

TEST_CASE("positivity on the tested grid") {
  for (std::int64_t r : {2, 3})
    for (std::int64_t k = 0; k <= 6; ++k)
      for (std::int64_t g = 1; g <= 3; ++g) CHECK(verlinde_dim_trig(r, k, g) >= 1);
}

TEST_CASE("check_verlinde_equivalence examples") {
  auto rep = check_verlinde_equivalence(5, 2, 2);
  CHECK(rep.lhs == 5);
  CHECK(rep.verlinde_dimension == 20);
  CHECK(rep.rhs == 5);
  CHECK(rep.equal);
  CHECK_FALSE(rep.conjectural);

  rep = check_verlinde_equivalence(7, 2, 2);
  CHECK(rep.verlinde_dimension == 56);
  CHECK(rep.lhs == 14);
  CHECK(rep.equal);

  rep = check_verlinde_equivalence(5, 2, 3);
  CHECK(rep.verlinde_dimension == 120);
  CHECK(rep.lhs == 15);
  CHECK(rep.equal);

  CHECK_THROWS_AS(check_verlinde_equivalence(5, 3, 2), ThresholdError);
}

TEST_CASE("equivalence holds for r = 2 in the proven range") {
  for (std::int64_t p : {5, 7, 11, 13})
    for (std::int64_t g : {2, 3, 4}) {
      const auto rep = check_verlinde_equivalence(p, 2, g);
      CHECK_MESSAGE(rep.equal, "p=" << p << " g=" << g);
      CHECK(rep.method == VerlindeMethod::fusion);
    }
}

TEST_CASE("rank 3 probe (conjectural regression data)") {
  // Recorded verdicts; a change here means the engine changed, not that the
  // conjecture was settled.
  struct Row { std::int64_t p, g; long dim; bool equal; };
  for (const Row& row : {Row{7, 2, 504, true}, Row{11, 2, 14157, true}, Row{13, 2, 50193, true},
                         Row{13, 3, 390022425, true}}) {
    const auto rep = check_verlinde_equivalence(row.p, 3, row.g);
    CHECK(rep.conjectural);
    CHECK(rep.verlinde_dimension == row.dim);
    CHECK(rep.equal == row.equal);
  }
}
