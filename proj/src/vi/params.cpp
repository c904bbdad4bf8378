#include "dormant/vi/params.hpp"

#include "dormant/errors.hpp"
#include "dormant/exact/number_theory.hpp"

namespace dormant::vi {

using exact::mod_floor;

namespace {

void validate(std::int64_t n, std::int64_t r, std::int64_t g) {
  if (n < 1) throw ParameterError("n must be >= 1 (got " + std::to_string(n) + ")");
  if (r < 1) throw ParameterError("r must be >= 1 (got " + std::to_string(r) + ")");
  if (g < 2) throw ParameterError("genus must be >= 2 (got " + std::to_string(g) + ")");
  if (r > n)
    throw ParameterError("r=" + std::to_string(r) + " > n=" + std::to_string(n) +
                         ": no tuple of distinct n-th roots of unity exists");
}

void fill_derived(ViParams& p) {
  p.term_exponent = p.b - p.g + 1;
  const std::int64_t num = (p.r - 1) * (p.b * p.r - (p.g - 1) * p.r * p.r);
  if (num % p.n == 0) p.sign_exponent = num / p.n;
  p.rotation_character =
      mod_floor(p.r * p.term_exponent - p.r * (p.r - 1) * (p.g - 1), p.n);
}

}  // namespace

std::string ViParams::describe() const {
  return "n=" + std::to_string(n) + ",d=" + std::to_string(d) + ",r=" + std::to_string(r) +
         ",g=" + std::to_string(g);
}

ViParams derive_params(std::int64_t n, std::int64_t d, std::int64_t r, std::int64_t g) {
  validate(n, r, g);
  ViParams p;
  p.n = n;
  p.d = d;
  p.r = r;
  p.g = g;
  p.b = mod_floor(-d, n);
  p.a = (d + p.b) / n;
  fill_derived(p);
  return p;
}

}  // namespace dormant::vi
