#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dormant/exact/big_rational.hpp"
#include "dormant/exact/polynomial.hpp"
#include "dormant/oper/degrees.hpp"

namespace dormant::analysis {

using exact::BigRational;
using exact::RatPoly;

/// Lagrange interpolation in exact arithmetic: the unique polynomial of
/// degree < points.size() through every point. ParameterError on repeated x.
RatPoly interpolate_rational(const std::vector<std::pair<BigRational, BigRational>>& points);

struct PolynomialityReport {
  std::int64_t g = 0;
  RatPoly poly;
  std::int64_t degree_bound = 0;  // 3g - 3
  bool degree_ok = false;
  /// (p, predicted, computed) for each verification prime.
  std::vector<std::tuple<std::int64_t, BigRational, BigRational>> checks;
  bool verified = false;
};

/// Fits the rank-2 dormant degree in p at `fit_primes`, checks the fitted
/// degree is at most 3g-3, and compares predictions with fresh computations
/// at `verify_primes`. Only r = 2 is supported.
PolynomialityReport polynomiality_check(std::int64_t g, const std::vector<std::int64_t>& fit_primes,
                                        const std::vector<std::int64_t>& verify_primes,
                                        std::int64_t r = 2,
                                        const oper::EvalOptions& opts = {});

enum class TableFormat { json, csv, markdown };

struct GridRow {
  std::int64_t p = 0, r = 0, g = 0;
  /// Empty when the cell was skipped.
  std::optional<BigRational> dormant_degree;
  std::optional<BigRational> sl_degree;
  /// "equal", "not_equal", or "error"; empty when skipped.
  std::string verlinde_verdict;
  bool verlinde_conjectural = false;
  /// "threshold", "non_prime", "r_ge_p"; empty for computed cells.
  std::string skip_reason;
  std::string skip_detail;
};

struct GridReport {
  std::vector<GridRow> rows;  // sorted by (g, r, p)
  TableFormat format = TableFormat::json;

  /// Deterministic rendering in `format`.
  std::string serialize() const;
};

GridReport generate_table(const std::vector<std::int64_t>& g_range,
                          const std::vector<std::int64_t>& r_range,
                          const std::vector<std::int64_t>& p_range,
                          TableFormat format = TableFormat::json,
                          const oper::EvalOptions& opts = {});

}  // namespace dormant::analysis
