#include <algorithm>
#include <set>

#include "dormant/analysis/analysis.hpp"
#include "dormant/errors.hpp"

namespace dormant::analysis {

RatPoly interpolate_rational(const std::vector<std::pair<BigRational, BigRational>>& points) {
  std::set<BigRational> seen;
  for (const auto& [x, y] : points)
    if (!seen.insert(x).second)
      throw ParameterError("interpolate_rational: duplicate x = " + x.to_string());

  RatPoly result;
  for (std::size_t i = 0; i < points.size(); ++i) {
    RatPoly basis = RatPoly::constant(BigRational(1));
    BigRational denom(1);
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      basis = basis * RatPoly({-points[j].first, BigRational(1)});
      denom *= points[i].first - points[j].first;
    }
    result += basis * (points[i].second / denom);
  }
  return result;
}

PolynomialityReport polynomiality_check(std::int64_t g, const std::vector<std::int64_t>& fit_primes,
                                        const std::vector<std::int64_t>& verify_primes,
                                        std::int64_t r, const oper::EvalOptions& opts) {
  if (r != 2) throw ParameterError("polynomiality in p is only established for r = 2");
  if (g < 2) throw ParameterError("genus must be >= 2");
  PolynomialityReport out;
  out.g = g;
  out.degree_bound = 3 * g - 3;
  if (static_cast<std::int64_t>(fit_primes.size()) < out.degree_bound + 1)
    throw ParameterError("need at least " + std::to_string(out.degree_bound + 1) +
                         " fit primes for genus " + std::to_string(g));
  const std::int64_t floor = std::max<std::int64_t>(2 * g - 2, 2);
  for (auto p : fit_primes)
    if (p <= floor) throw ParameterError("fit prime " + std::to_string(p) + " must exceed " +
                                         std::to_string(floor));
  for (auto p : verify_primes)
    if (p <= floor) throw ParameterError("verify prime " + std::to_string(p) + " must exceed " +
                                         std::to_string(floor));

  std::vector<std::pair<BigRational, BigRational>> pts;
  for (auto p : fit_primes) pts.emplace_back(BigRational(p), oper::dormant_degree(p, r, g, opts).value);
  out.poly = interpolate_rational(pts);
  out.degree_ok = out.poly.degree() <= out.degree_bound;

  out.verified = true;
  for (auto p : verify_primes) {
    BigRational predicted = out.poly(BigRational(p));
    BigRational computed = oper::dormant_degree(p, r, g, opts).value;
    out.verified = out.verified && predicted == computed;
    out.checks.emplace_back(p, std::move(predicted), std::move(computed));
  }
  return out;
}

}  // namespace dormant::analysis
