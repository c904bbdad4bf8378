#include "dormant/exact/number_theory.hpp"

namespace dormant::exact {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::int64_t f = 3; f * f <= n; f += 2)
    if (n % f == 0) return false;
  return true;
}

std::uint64_t euler_phi(std::uint64_t m) {
  std::uint64_t result = m;
  for (std::uint64_t f = 2; f * f <= m; ++f) {
    if (m % f != 0) continue;
    while (m % f == 0) m /= f;
    result -= result / f;
  }
  if (m > 1) result -= result / m;
  return result;
}

std::vector<std::uint64_t> divisors(std::uint64_t m) {
  std::vector<std::uint64_t> lo, hi;
  for (std::uint64_t d = 1; d * d <= m; ++d) {
    if (m % d != 0) continue;
    lo.push_back(d);
    if (d != m / d) hi.push_back(m / d);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

}  // namespace dormant::exact
