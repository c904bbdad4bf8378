#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace dormant::vi {

/// Validated inputs to the Vafa-Intriligator sum, with the
/// quantities derived from writing d = n*a - b, 0 <= b < n.
struct ViParams {
  std::int64_t n = 0;  // order of the roots of unity (rank of the ambient bundle)
  std::int64_t d = 0;  // degree of the ambient bundle
  std::int64_t r = 0;  // subbundle rank == tuple length
  std::int64_t g = 0;  // genus
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t term_exponent = 0;  // b - g + 1
  /// (r-1)(b*r - (g-1)r^2)/n; empty when n does not divide the numerator.
  std::optional<std::int64_t> sign_exponent;
  /// Weight picked up by one term when every root is rotated by zeta_n,
  /// reduced to [0, n).
  std::int64_t rotation_character = 0;

  bool sign_valid() const { return sign_exponent.has_value(); }
  std::string describe() const;
};

/// Throws ParameterError for n < 1, g < 2, r < 1, or r > n (no tuple of
/// distinct roots exists).
ViParams derive_params(std::int64_t n, std::int64_t d, std::int64_t r, std::int64_t g);

}  // namespace dormant::vi
