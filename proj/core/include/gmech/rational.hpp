#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gmech {

// Exact arbitrary-precision rational, always canonical (reduced, positive
// denominator). No rounding happens anywhere in the library.
using Rational = mpq_class;

// mpq_class's two-argument constructor does not canonicalize, and GMP
// comparisons silently assume canonical operands; build fractions here.
inline Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "7", "-3/4", "0.25" (decimals become exact decimal fractions).
// Throws ValidationError on anything else.
Rational parse_rational(std::string_view text);

// Canonical form: "7" or "-3/4".
std::string to_string(const Rational& q);

}  // namespace gmech
