#pragma once

#include <cstdint>
#include <vector>

namespace dormant::exact {

/// Deterministic trial division; intended for desk-scale arguments.
bool is_prime(std::int64_t n);

std::uint64_t euler_phi(std::uint64_t m);

/// Positive divisors of m in increasing order.
std::vector<std::uint64_t> divisors(std::uint64_t m);

/// Floor-style Euclidean remainder in [0, m).
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace dormant::exact
