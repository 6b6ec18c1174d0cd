#include "mecode/exact.hpp"

#include <cmath>
#include <cstdint>

#include "mecode/error.hpp"

namespace mecode {

Rational to_rational(double v) {
  if (!std::isfinite(v)) throw ValidationError("cannot represent a non-finite value exactly");
  if (v == 0.0) return Rational(0);
  int exp = 0;
  const double frac = std::frexp(v, &exp);
  // 53-bit integer mantissa scaled by 2^(exp-53).
  const auto mantissa = static_cast<std::int64_t>(std::ldexp(frac, 53));
  exp -= 53;
  Rational r(mantissa);
  if (exp > 0) {
    r *= Rational(BigInt(1) << exp);
  } else if (exp < 0) {
    r /= Rational(BigInt(1) << -exp);
  }
  return r;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt c = 1;
  for (unsigned i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;
  }
  return c;
}

}  // namespace mecode
