#include "dormant/vi/engine.hpp"

#include <algorithm>
#include <future>
#include <thread>
#include <vector>

#include "dormant/errors.hpp"
#include "dormant/exact/number_theory.hpp"

namespace dormant::vi {

using exact::BigInt;
using exact::BigRational;
using exact::CycloElt;

std::string_view to_string(Reduction r) {
  switch (r) {
    case Reduction::naive: return "naive";
    case Reduction::rotation_and_permutation: return "rotation_and_permutation";
  }
  return "unknown";
}

CycloElt vi_term(std::span<const CycloElt> tuple, const ViParams& params) {
  if (static_cast<std::int64_t>(tuple.size()) != params.r)
    throw ParameterError("vi_term: expected " + std::to_string(params.r) + " roots, got " +
                         std::to_string(tuple.size()));
  const auto n = static_cast<unsigned>(params.n);
  CycloElt prod = CycloElt::one(n);
  CycloElt diffs = CycloElt::one(n);
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i].conductor() != n)
      throw ParameterError("vi_term: root conductor " + std::to_string(tuple[i].conductor()) +
                           " does not match n=" + std::to_string(n));
    prod *= tuple[i];
    for (std::size_t j = 0; j < tuple.size(); ++j)
      if (i != j) diffs *= tuple[i] - tuple[j];
  }
  if (diffs.is_zero()) throw DivisionByZero("vi_term: roots are not distinct");
  return pow(prod, params.term_exponent) * pow(diffs, -(params.g - 1));
}

SumValue vi_sum_naive(const ViParams& params, EnumerationCap cap) {
  if (params.n > cap.max_n || params.r > cap.max_r)
    throw SizeError("naive enumeration capped at n <= " + std::to_string(cap.max_n) +
                    ", r <= " + std::to_string(cap.max_r) + " (got " + params.describe() + ")");
  const auto n = static_cast<unsigned>(params.n);
  const auto r = static_cast<std::size_t>(params.r);

  std::vector<CycloElt> roots;
  roots.reserve(n);
  for (unsigned k = 0; k < n; ++k) roots.push_back(CycloElt::zeta_power(n, k));

  SumValue out;
  out.reduction = Reduction::naive;
  CycloElt total = CycloElt::zero(n);
  std::vector<std::size_t> idx(r, 0);
  std::vector<CycloElt> tuple(r, CycloElt::zero(n));
  // Odometer over [0, n)^r, skipping tuples with repeats.
  while (true) {
    bool distinct = true;
    for (std::size_t i = 0; i < r && distinct; ++i)
      for (std::size_t j = i + 1; j < r && distinct; ++j) distinct = idx[i] != idx[j];
    if (distinct) {
      for (std::size_t i = 0; i < r; ++i) tuple[i] = roots[idx[i]];
      total += vi_term(tuple, params);
      ++out.terms_evaluated;
    }
    std::size_t pos = 0;
    while (pos < r && ++idx[pos] == n) idx[pos++] = 0;
    if (pos == r) break;
  }
  out.exact = exact::as_rational(total);
  return out;
}

namespace {

// Advances a k-subset of {1, ..., top} in lexicographic order.
bool next_subset(std::vector<std::int64_t>& s, std::int64_t top) {
  const auto k = static_cast<std::int64_t>(s.size());
  for (std::int64_t i = k - 1; i >= 0; --i) {
    if (s[i] < top - (k - 1 - i)) {
      ++s[i];
      for (std::int64_t j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Shared tables for the reduced sum: pair[k] = ((1 - z^k)(1 - z^{-k}))^{-(g-1)}.
struct ReducedTables {
  std::vector<CycloElt> pair;
};

ReducedTables build_tables(const ViParams& p) {
  const auto n = static_cast<unsigned>(p.n);
  std::vector<CycloElt> inv;
  inv.reserve(n);
  inv.push_back(CycloElt::zero(n));
  const CycloElt one = CycloElt::one(n);
  for (unsigned k = 1; k < n; ++k)
    inv.push_back(pow(exact::cyclo_invert(one - CycloElt::zeta_power(n, k)), p.g - 1));
  ReducedTables t;
  t.pair.reserve(n);
  t.pair.push_back(CycloElt::zero(n));
  for (unsigned k = 1; k < n; ++k) t.pair.push_back(inv[k] * inv[n - k]);
  return t;
}

// term({1} u S) with roots written as exponents a_0 = 0 < a_1 < ... of zeta_n.
CycloElt reduced_term(const std::vector<std::int64_t>& exps, const ViParams& p,
                      const ReducedTables& t) {
  const auto n = static_cast<unsigned>(p.n);
  std::int64_t total = 0;
  for (auto e : exps) total += e;
  // rho_i - rho_j = zeta^{a_i} (1 - zeta^{a_j - a_i}); the ordered-pair
  // product of the zeta^{a_i} factors is zeta^{(r-1) sum a}.
  const std::int64_t shift = p.term_exponent * total - (p.g - 1) * (p.r - 1) * total;
  CycloElt acc = CycloElt::zeta_power(n, exact::mod_floor(shift, p.n));
  for (std::size_t i = 0; i < exps.size(); ++i)
    for (std::size_t j = i + 1; j < exps.size(); ++j)
      acc *= t.pair[static_cast<std::size_t>(exact::mod_floor(exps[j] - exps[i], p.n))];
  return acc;
}

}  // namespace

SumValue vi_sum_reduced(const ViParams& params, unsigned workers) {
  SumValue out;
  out.reduction = Reduction::rotation_and_permutation;
  if (params.rotation_character != 0) {
    out.exact = BigRational(0);
    return out;
  }
  const auto n = static_cast<unsigned>(params.n);
  const std::int64_t k = params.r - 1;
  const ReducedTables tables = build_tables(params);

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());

  auto run_stripe = [&](unsigned stripe) {
    CycloElt partial = CycloElt::zero(n);
    std::uint64_t count = 0, index = 0;
    std::vector<std::int64_t> subset(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < k; ++i) subset[i] = i + 1;
    std::vector<std::int64_t> exps(static_cast<std::size_t>(params.r), 0);
    do {
      if (index++ % workers == stripe) {
        std::copy(subset.begin(), subset.end(), exps.begin() + 1);
        partial += reduced_term(exps, params, tables);
        ++count;
      }
    } while (next_subset(subset, params.n - 1));
    return std::pair{partial, count};
  };

  CycloElt total = CycloElt::zero(n);
  if (workers == 1) {
    auto [s, c] = run_stripe(0);
    total = std::move(s);
    out.terms_evaluated = c;
  } else {
    std::vector<std::future<std::pair<CycloElt, std::uint64_t>>> jobs;
    for (unsigned w = 0; w < workers; ++w)
      jobs.push_back(std::async(std::launch::async, run_stripe, w));
    for (auto& j : jobs) {
      auto [s, c] = j.get();
      total += s;
      out.terms_evaluated += c;
    }
  }
  const BigRational subset_sum = exact::as_rational(total);
  out.exact = subset_sum * BigRational(params.n) * BigRational(exact::factorial(k));
  return out;
}

ComplexBall vi_sum_ball(const ViParams& params, mpfr_prec_t precision_bits,
                        std::uint64_t* terms_evaluated) {
  if (precision_bits < 2) throw ParameterError("precision must be at least 2 bits");
  const auto n = static_cast<std::size_t>(params.n);
  const auto r = static_cast<std::size_t>(params.r);
  std::vector<ComplexBall> roots;
  roots.reserve(n);
  for (std::size_t k = 0; k < n; ++k)
    roots.push_back(ComplexBall::root_of_unity(static_cast<std::int64_t>(k), params.n,
                                               precision_bits));
  const ComplexBall one = ComplexBall::from_rational(BigRational(1), precision_bits);

  ComplexBall total(precision_bits);
  std::uint64_t count = 0;
  std::vector<std::size_t> idx(r, 0);
  while (true) {
    bool distinct = true;
    for (std::size_t i = 0; i < r && distinct; ++i)
      for (std::size_t j = i + 1; j < r && distinct; ++j) distinct = idx[i] != idx[j];
    if (distinct) {
      ComplexBall prod = one, diffs = one;
      for (std::size_t i = 0; i < r; ++i) {
        prod *= roots[idx[i]];
        for (std::size_t j = 0; j < r; ++j)
          if (i != j) diffs *= roots[idx[i]] - roots[idx[j]];
      }
      total += pow(prod, params.term_exponent) * pow(diffs, -(params.g - 1));
      ++count;
    }
    std::size_t pos = 0;
    while (pos < r && ++idx[pos] == n) idx[pos++] = 0;
    if (pos == r) break;
  }
  if (terms_evaluated) *terms_evaluated = count;
  return total;
}

bool ball_contains(const ComplexBall& ball, const BigRational& q) {
  const mpfr_prec_t prec = ball.precision();
  Mpfr dr(prec), di(prec), dist(prec);
  mpfr_sub_q(dr.get(), ball.re().get(), q.raw().get_mpq_t(), MPFR_RNDN);
  mpfr_abs(dr.get(), dr.get(), MPFR_RNDD);
  mpfr_abs(di.get(), ball.im().get(), MPFR_RNDD);
  mpfr_hypot(dist.get(), dr.get(), di.get(), MPFR_RNDD);
  // Allow for the rounding of the subtraction itself.
  Mpfr slack(64);
  mpfr_abs(slack.get(), ball.re().get(), MPFR_RNDU);
  mpfr_mul_2si(slack.get(), slack.get(), -(prec - 2), MPFR_RNDU);
  mpfr_add(slack.get(), slack.get(), ball.radius().get(), MPFR_RNDU);
  return mpfr_cmp(dist.get(), slack.get()) <= 0;
}

SumValue vi_sum_crosschecked(const ViParams& params, mpfr_prec_t precision_bits) {
  SumValue out = vi_sum_reduced(params);
  out.float_estimate = vi_sum_ball(params, precision_bits);
  if (!ball_contains(*out.float_estimate, out.exact))
    throw DomainError("backends disagree for " + params.describe() + ": exact " +
                      out.exact.to_string() + " outside " + out.float_estimate->to_string());
  return out;
}

BigRational vi_prefactor(const ViParams& params) {
  if (!params.sign_valid())
    throw DomainError("sign exponent (r-1)(b*r-(g-1)r^2)/n is not an integer for " +
                      params.describe());
  BigRational pre(exact::pow(BigInt(params.n),
                             static_cast<unsigned long>(params.r * (params.g - 1))),
                  exact::factorial(static_cast<unsigned long>(params.r)));
  return (*params.sign_exponent % 2 != 0) ? -pre : pre;
}

BigRational vi_degree(std::int64_t n, std::int64_t d, std::int64_t r, std::int64_t g,
                      unsigned workers) {
  const ViParams p = derive_params(n, d, r, g);
  const BigRational pre = vi_prefactor(p);
  return pre * vi_sum_reduced(p, workers).exact;
}

BigRational vi_degree_float(std::int64_t n, std::int64_t d, std::int64_t r, std::int64_t g,
                            mpfr_prec_t precision_bits) {
  const ViParams p = derive_params(n, d, r, g);
  const BigRational pre = vi_prefactor(p);
  const ComplexBall value =
      ComplexBall::from_rational(pre, precision_bits) * vi_sum_ball(p, precision_bits);
  const BigInt lattice = exact::factorial(static_cast<unsigned long>(r)) * BigInt(n);
  return round_to_lattice(value, lattice);
}

}  // namespace dormant::vi
